#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"
#include "optokerr/sysparams.hpp"

using namespace optokerr;

TEST_CASE("derived rates for the 1064 nm, 10 MHz mirror") {
  const DerivedParams d = derive_params(fixtures::fig2(0.0, 0.01));
  CHECK(d.omega_cav == doctest::Approx(1770349217395538.5).epsilon(1e-14));
  CHECK(d.gamma_m == doctest::Approx(125.66370614359172).epsilon(1e-12));
  CHECK(d.gamma_m * d.input.q_factor == doctest::Approx(d.input.omega_m).epsilon(1e-15));
  CHECK(d.g_m == doctest::Approx(d.omega_cav / 1e-3).epsilon(1e-15));
}

TEST_CASE("thermal occupancy") {
  CHECK(thermal_occupancy(constants::two_pi * 10e6, 0.0) == 0.0);
  const double n = thermal_occupancy(constants::two_pi * 10e6, 0.4);
  CHECK(n == doctest::Approx(832.9648654280111).epsilon(1e-10));
  CHECK(n > 0.0);
}

TEST_CASE("validate reports instead of throwing") {
  auto p = fixtures::fig3(0.01, 8e6);
  CHECK(validate(p).ok());
  CHECK(validate(p).warnings.empty());

  p.mass = 0.0;
  const auto r = validate(p);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations.front().field == "mass");

  auto q = fixtures::fig3(0.01, 8e6);
  q.theta = constants::two_pi;
  CHECK_FALSE(validate(q).ok());
  q.theta = 0.0;
  q.gain = -1.0;
  CHECK_FALSE(validate(q).ok());
  q.gain = 0.0;
  q.power = std::nan("");
  CHECK_FALSE(validate(q).ok());
}

TEST_CASE("adiabatic and sideband warnings") {
  auto p = fixtures::fig3(0.0, 0.0);
  p.length = 1e-6;
  CHECK(validate(p).warnings.empty());
  p.length = 10.0;
  REQUIRE(validate(p).warnings.size() == 1);
  CHECK(validate(p).warnings.front().field == "omega_m");
  auto q = fixtures::fig9(0.0, 0.0, 1.0);
  q.kappa = 2.0 * q.omega_m;
  REQUIRE(validate(q).warnings.size() == 1);
  CHECK(validate(q).warnings.front().field == "kappa");
}

TEST_CASE("derive_params names the offending field") {
  auto p = fixtures::fig3(0.0, 0.0);
  p.kappa = -1.0;
  try {
    (void)derive_params(p);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
    CHECK(std::string(e.what()).find("kappa") != std::string::npos);
  }
}

TEST_CASE("derive_params is pure and scales as expected") {
  const auto p = fixtures::fig4(0.01, 1e6);
  const DerivedParams a = derive_params(p), b = derive_params(p);
  CHECK(a.g0 == b.g0);
  CHECK(a.drive == b.drive);
  CHECK(a.nbar == b.nbar);

  auto heavy = p;
  heavy.mass *= 4.0;
  CHECK(derive_params(heavy).g0 == doctest::Approx(0.5 * a.g0).epsilon(1e-15));

  auto bright = p;
  bright.power *= 2.0;
  CHECK(derive_params(bright).drive == doctest::Approx(std::sqrt(2.0) * a.drive).epsilon(1e-15));
}

TEST_CASE("with_coupling keeps g0 consistent") {
  const DerivedParams d = derive_params(fixtures::fig4(0.01, 1e6));
  const DerivedParams z = d.with_coupling(0.0);
  CHECK(z.g_m == 0.0);
  CHECK(z.g0 == 0.0);
  CHECK(z.detuning_slope() == doctest::Approx(2.0 * d.input.eta));
}
