// Benchmark: serial reference kernels vs the OpenMP row kernels for the
// O(N^2) product-integration sweeps (weight build, triangular apply, and the
// singular-head profile path). Also asserts both policies agree bitwise.

#include "psifrac/frac_operators.hpp"
#include "psifrac/grid_function.hpp"
#include "psifrac/kernels.hpp"
#include "psifrac/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

using namespace psifrac;

namespace {

double now_ms()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
        .count();
}

template <typename F>
double time_ms(F&& fn, int reps)
{
    fn();  // warm up
    const double t0 = now_ms();
    for (int k = 0; k < reps; ++k)
        fn();
    return (now_ms() - t0) / reps;
}

bool identical(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] && !(std::isnan(a[i]) && std::isnan(b[i])))
            return false;
    return true;
}

} // namespace

int main()
{
    std::printf("threads available: %d\n\n", kernels::max_threads());
    std::printf("%6s  %-22s  %10s  %10s  %8s  %s\n", "N", "kernel", "serial ms",
                "openmp ms", "speedup", "identical");

    for (int n : {512, 1024, 2048}) {
        const FramePtr frame = make_frame(GradedMesh(1.0, n, 2.0), PsiFunction::identity(),
                                          FractionalOrder(0.5, 0.5));
        const std::vector<double>& u = frame->u();

        std::vector<double> values(u.size());
        for (std::size_t i = 0; i < u.size(); ++i)
            values[i] = std::cos(3.0 * u[i]);

        // Weight-matrix build.
        const double build_s = time_ms(
            [&] { ProductIntegralOperator op(u, 0.5, Exec::Serial); }, 1);
        const double build_p = time_ms(
            [&] { ProductIntegralOperator op(u, 0.5, Exec::Parallel); }, 1);
        const ProductIntegralOperator op_s(u, 0.5, Exec::Serial);
        const ProductIntegralOperator op_p(u, 0.5, Exec::Parallel);
        std::vector<double> out_s(u.size()), out_p(u.size());
        op_s.apply(values, out_s, Exec::Serial);
        op_p.apply(values, out_p, Exec::Parallel);
        std::printf("%6d  %-22s  %10.2f  %10.2f  %8.2f  %s\n", n, "weight build", build_s,
                    build_p, build_s / build_p, identical(out_s, out_p) ? "yes" : "NO");

        // Triangular apply (the Picard inner loop).
        const double apply_s =
            time_ms([&] { op_s.apply(values, out_s, Exec::Serial); }, 5);
        const double apply_p =
            time_ms([&] { op_p.apply(values, out_p, Exec::Parallel); }, 5);
        std::printf("%6d  %-22s  %10.2f  %10.2f  %8.2f  %s\n", n, "triangular apply",
                    apply_s, apply_p, apply_s / apply_p,
                    identical(out_s, out_p) ? "yes" : "NO");

        // Singular-head profile (the verification path).
        const SingularHead head{frame->xi() - 1.0, 1.0};
        std::vector<double> singular(u.size());
        singular[0] = 0.0;
        for (std::size_t i = 1; i < u.size(); ++i)
            singular[i] = std::pow(u[i], head.sigma);
        std::vector<double> prof_s, prof_p;
        const double head_s = time_ms(
            [&] { prof_s = rl_integral_profile(u, singular, head, 0.5, Exec::Serial); }, 1);
        const double head_p = time_ms(
            [&] { prof_p = rl_integral_profile(u, singular, head, 0.5, Exec::Parallel); },
            1);
        std::printf("%6d  %-22s  %10.2f  %10.2f  %8.2f  %s\n", n, "singular-head profile",
                    head_s, head_p, head_s / head_p,
                    identical(prof_s, prof_p) ? "yes" : "NO");
    }
    return 0;
}
