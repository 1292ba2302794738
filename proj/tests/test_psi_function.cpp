#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psifrac/grid_function.hpp"
#include "psifrac/psi_function.hpp"

#include <cmath>

using namespace psifrac;

TEST_CASE("identity preset")
{
    const PsiFunction psi = PsiFunction::identity();
    CHECK(psi.psi(3.0) == 3.0);
    CHECK(psi.psi_prime(3.0) == 1.0);
    CHECK(psi.increment(3.0) == 3.0);
}

TEST_CASE("power preset")
{
    const PsiFunction psi = PsiFunction::power(2.0);
    CHECK(psi.psi(3.0) == doctest::Approx(9.0));
    CHECK(psi.psi_prime(3.0) == doctest::Approx(6.0));
    CHECK_THROWS_AS(PsiFunction::power(0.0), PsiValidationError);
    CHECK_THROWS_AS(PsiFunction::power(-1.0), PsiValidationError);
}

TEST_CASE("shifted-log preset")
{
    const PsiFunction psi = PsiFunction::shifted_log();
    const double t = std::exp(1.0) - 1.0;
    CHECK(psi.psi(t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi.psi_prime(t) == doctest::Approx(1.0 / std::exp(1.0)).epsilon(1e-14));
    CHECK(psi.increment(0.0) == 0.0);
}

TEST_CASE("custom accepted when consistent")
{
    const Expr psi_e = Expr::parse("t", {"t"});
    const Expr prime_e = Expr::parse("1", {"t"});
    const PsiFunction psi = PsiFunction::custom(psi_e, prime_e, 1.0);
    for (double t = 0.1; t < 1.0; t += 0.2)
        CHECK(psi.increment(t) == doctest::Approx(t));
}

TEST_CASE("custom rejected on derivative mismatch")
{
    // Declared derivative t instead of the true 2t.
    const Expr psi_e = Expr::parse("t^2", {"t"});
    const Expr prime_e = Expr::parse("t", {"t"});
    CHECK_THROWS_AS(PsiFunction::custom(psi_e, prime_e, 1.0), PsiValidationError);
}

TEST_CASE("custom rejected on monotonicity violation")
{
    const Expr psi_e = Expr::parse("-t", {"t"});
    const Expr prime_e = Expr::parse("-1", {"t"});
    CHECK_THROWS_AS(PsiFunction::custom(psi_e, prime_e, 1.0), PsiValidationError);
}

TEST_CASE("custom requires the single variable t")
{
    const Expr wrong = Expr::parse("y", {"y"});
    const Expr prime = Expr::parse("1", {"y"});
    CHECK_THROWS_AS(PsiFunction::custom(wrong, prime, 1.0), PsiValidationError);
}

TEST_CASE("finite-difference cross-check holds for presets")
{
    const double T = 2.0;
    const double h = 1e-5 * T;
    for (const PsiFunction& psi :
         {PsiFunction::identity(), PsiFunction::power(1.7), PsiFunction::shifted_log()}) {
        for (int k = 1; k < 16; ++k) {
            const double t = T * k / 16.0;
            if (t - h <= 0.0 || t + h >= T)
                continue;
            const double fd = (psi.psi(t + h) - psi.psi(t - h)) / (2.0 * h);
            CHECK(std::abs(psi.psi_prime(t) - fd) < 1e-4 * std::abs(psi.psi_prime(t)));
        }
    }
}

TEST_CASE("psi increments are positive across mesh node pairs")
{
    for (const PsiFunction& psi :
         {PsiFunction::identity(), PsiFunction::power(2.0), PsiFunction::shifted_log()}) {
        const FramePtr frame =
            make_frame(GradedMesh(1.5, 64, 2.0), psi, FractionalOrder(0.5, 0.5));
        for (int i = 1; i <= 64; ++i)
            CHECK(frame->u_at(i) > frame->u_at(i - 1));
    }
}

TEST_CASE("from_spec parses the CLI forms")
{
    CHECK(PsiFunction::from_spec("identity", 1.0).kind() == PsiFunction::Kind::Identity);
    CHECK(PsiFunction::from_spec("power:2.5", 1.0).kind() == PsiFunction::Kind::Power);
    CHECK(PsiFunction::from_spec("shifted-log", 1.0).kind() == PsiFunction::Kind::ShiftedLog);
    const PsiFunction c = PsiFunction::from_spec("custom:t+t^2,1+2*t", 1.0);
    CHECK(c.kind() == PsiFunction::Kind::Custom);
    CHECK(c.psi(0.5) == doctest::Approx(0.75));
    CHECK_THROWS_AS(PsiFunction::from_spec("bogus", 1.0), PsiValidationError);
    CHECK_THROWS_AS(PsiFunction::from_spec("custom:t", 1.0), PsiValidationError);
}
