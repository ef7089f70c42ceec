#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "slicereg/caratheodory.hpp"
#include "slicereg/evaluation.hpp"
#include "slicereg/generators.hpp"
#include "slicereg/quaternion.hpp"
#include "slicereg/random.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

/// One named property check. pass iff worst <= tolerance; for margin-style
/// checks `worst` is the largest violation (margin deficit), negative when
/// everything holds with room to spare.
struct CheckResult {
    std::string name;
    double worst{0.0};
    double tolerance{0.0};
    long long samples{0};
    bool pass{false};
};

struct IdentityConfig {
    std::uint64_t seed{42};
    int order{32};
    int n_bulk{1000};  // single-loop sample counts
    int n_pairs{100};  // outer count for (function x point) checks
    int n_points{100}; // inner count for (function x point) checks
    double r_max{0.9};
    int n_theta{1024};
    int n_sphere{64};
    std::map<std::string, double> tolerance_overrides; // by name; "all" hits every check
};

namespace detail {

inline double chosen_tolerance(const IdentityConfig& cfg, const std::string& name,
                               double fallback) {
    auto it = cfg.tolerance_overrides.find(name);
    if (it != cfg.tolerance_overrides.end()) return it->second;
    it = cfg.tolerance_overrides.find("all");
    if (it != cfg.tolerance_overrides.end()) return it->second;
    return fallback;
}

inline CheckResult finish(const IdentityConfig& cfg, const std::string& name, double worst,
                          double default_tol, long long samples) {
    const double tol = chosen_tolerance(cfg, name, default_tol);
    return CheckResult{name, worst, tol, samples, worst <= tol};
}

inline double max_coeff_diff(const QSeries& a, const QSeries& b) {
    const int n = std::min(a.order(), b.order());
    double worst = 0.0;
    for (int m = 0; m <= n; ++m) worst = std::max(worst, (a[m] - b[m]).norm());
    return worst;
}

inline double diff_from_one(const QSeries& a) {
    double worst = (a[0] - Quaternion::one()).norm();
    for (int m = 1; m <= a.order(); ++m) worst = std::max(worst, a[m].norm());
    return worst;
}

} // namespace detail

/// Runs the full algebra/evaluation/bound property battery at the configured
/// sample counts. Deterministic per (seed, config).
inline std::vector<CheckResult> run_identity_checks(const IdentityConfig& cfg) {
    using detail::finish;
    std::vector<CheckResult> results;
    const Rng root(cfg.seed);

    // --- series algebra ---------------------------------------------------
    {
        Rng rng = root.derive(1);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const QSeries g = random_series_flat(rng, 16);
            const QSeries h = random_series_flat(rng, 16);
            worst = std::max(worst,
                             detail::max_coeff_diff(star_mul(star_mul(f, g), h),
                                                    star_mul(f, star_mul(g, h))));
        }
        results.push_back(finish(cfg, "star-assoc", worst, 1e-12, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(2);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_flat(rng, cfg.order);
            const QSeries fc = regular_conjugate(f);
            const QSeries fs = symmetrization(f);
            for (int m = 0; m <= fs.order(); ++m) worst = std::max(worst, fs[m].imag_norm());
            worst = std::max(worst, detail::max_coeff_diff(fs, star_mul(fc, f)));
        }
        results.push_back(finish(cfg, "symmetrization-real", worst, 1e-12, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(3);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_graded(rng, 32);
            const QSeries fi = regular_reciprocal(f);
            worst = std::max(worst, detail::diff_from_one(star_mul(fi, f)));
            worst = std::max(worst, detail::diff_from_one(star_mul(f, fi)));
        }
        results.push_back(finish(cfg, "reciprocal-identity", worst, 1e-10, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(4);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const QSeries g = random_series_flat(rng, 16);
            worst = std::max(worst,
                             detail::max_coeff_diff(regular_conjugate(star_mul(f, g)),
                                                    star_mul(regular_conjugate(g),
                                                             regular_conjugate(f))));
        }
        results.push_back(finish(cfg, "conjugate-antihom", worst, 1e-12, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(5);
        double worst = 0.0;
        const int count = std::max(1, cfg.n_bulk / 5);
        for (int t = 0; t < count; ++t) {
            const QSeries f = random_series_flat(rng, cfg.order);
            const int n0 = 1 + static_cast<int>(rng.uniform01() * 6.0);
            const QSeries back = compose_power(subseries(f, n0), n0);
            // exact index bookkeeping: grid coefficients survive bit-for-bit,
            // everything off-grid reads back zero
            for (int m = 0; m <= back.order(); ++m) {
                const Quaternion want = (m % n0 == 0) ? f[m] : Quaternion::zero();
                if (!(back[m] == want)) worst = std::max(worst, 1.0);
            }
        }
        results.push_back(finish(cfg, "subseries-roundtrip", worst, 0.0, count));
    }
    {
        Rng rng = root.derive(6);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const QSeries g = random_series_flat(rng, 16);
            worst = std::max(worst, leibniz_residual(f, g));
        }
        results.push_back(finish(cfg, "leibniz", worst, 1e-12, cfg.n_bulk));
    }

    // --- evaluation geometry ----------------------------------------------
    {
        Rng rng = root.derive(7);
        double worst_geom = 0.0, worst_inv = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_graded(rng, cfg.order);
            const Quaternion q = random_in_ball(rng, 0.4);
            const Quaternion tq = t_map(f, q);
            worst_geom = std::max(worst_geom, std::abs(tq.norm() - q.norm()));
            worst_geom = std::max(worst_geom, std::abs(tq.re() - q.re()));
            const Quaternion back = t_map(regular_conjugate(f), tq);
            worst_inv = std::max(worst_inv, (back - q).norm());
        }
        results.push_back(finish(cfg, "tmap-geometry", worst_geom, 1e-12, cfg.n_bulk));
        results.push_back(finish(cfg, "tmap-inverse", worst_inv, 1e-10, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(8);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_flat(rng, cfg.order);
            const QSeries g = random_series_flat(rng, cfg.order);
            const Quaternion q = random_in_ball(rng, 0.6);
            const double mfg = (cfg.order + 1) * f.max_coeff_norm() * g.max_coeff_norm();
            const double allowance = tail_bound(mfg, cfg.order, q.norm());
            const double diff =
                (eval(star_mul(f, g), q) - pointwise_star_eval(f, g, q)).norm();
            worst = std::max(worst, diff - allowance);
        }
        results.push_back(finish(cfg, "eval-coherence", worst, 1e-13, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(9);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = random_series_graded(rng, cfg.order);
            const QSeries g = random_series_flat(rng, cfg.order);
            const Quaternion q = random_in_ball(rng, 0.4);
            const QSeries quotient = star_mul(regular_reciprocal(f), g);
            const double allowance =
                tail_bound(2.0 * std::max(1.0, quotient.max_coeff_norm()), cfg.order, q.norm());
            const double diff = (eval(quotient, q) - quotient_eval(f, g, q)).norm();
            worst = std::max(worst, diff - allowance);
        }
        results.push_back(finish(cfg, "quotient-coherence", worst, 1e-10, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(10);
        double worst = 0.0;
        for (int t = 0; t < cfg.n_pairs; ++t) {
            const QSeries f = random_series_flat(rng, cfg.order);
            const UnitImaginary unit_i = random_unit_imaginary(rng);
            const UnitImaginary base_j = orthogonal_unit(unit_i);
            for (int which = 0; which < 2; ++which) {
                const UnitImaginary unit_j =
                    which == 0 ? base_j
                               : rotate_orthogonal(unit_i, base_j, rng.uniform(0.3, 6.0));
                const SplitPair parts = split(f, unit_i, unit_j);
                for (int p = 0; p < cfg.n_points / 2; ++p) {
                    const double r = 0.95 * std::sqrt(rng.uniform01());
                    const std::complex<double> z = std::polar(r, rng.uniform(0.0, 6.2831853));
                    const Quaternion direct = eval(f, slice_embed(z.real(), z.imag(), unit_i));
                    worst = std::max(worst, (parts.reconstruct(z) - direct).norm());
                }
            }
        }
        results.push_back(finish(cfg, "split-reconstruction", worst,
                                 1e-12, static_cast<long long>(cfg.n_pairs) * cfg.n_points));
    }

    // --- Caratheodory bounds ----------------------------------------------
    {
        Rng rng = root.derive(11);
        const double r_cap = std::min(cfg.r_max, 0.95);
        double worst_truncated = 0.0, worst_closed = 0.0;
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const HerglotzMix mix = random_mix(rng);
            const QSeries f = mix_series(mix, cfg.order);
            const Quaternion q = random_in_ball(rng, r_cap);
            const double allowance = tail_bound(2.0, cfg.order, q.norm());
            worst_truncated = std::max(worst_truncated, -(eval(f, q).re() + allowance));
            Quaternion closed;
            for (std::size_t j = 0; j < mix.kernels.size(); ++j) {
                closed += mix.weights[j] * kernel_eval_closed(mix.kernels[j], q);
            }
            worst_closed = std::max(worst_closed, -closed.re());
        }
        results.push_back(finish(cfg, "mix-positivity", worst_truncated, 1e-9, cfg.n_bulk));
        results.push_back(finish(cfg, "mix-positivity-closed", worst_closed, 1e-9, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(12);
        const double r_cap = std::min(cfg.r_max, 0.9);
        double worst = 0.0;
        const TailBound tail{2.0, cfg.order};
        for (int t = 0; t < cfg.n_bulk; ++t) {
            const QSeries f = mix_series(random_mix(rng), cfg.order);
            const Quaternion q = random_in_ball(rng, r_cap);
            const BoundReport rep = check_caratheodory_bounds(f, q, tail);
            worst = std::max(worst, -(rep.lower_margin + rep.tail_allowance));
            worst = std::max(worst, -rep.mid_margin);
            worst = std::max(worst, -(rep.upper_margin + rep.tail_allowance));
            for (double m : rep.coeff_margins) worst = std::max(worst, -m);
        }
        results.push_back(finish(cfg, "caratheodory-chain", worst, 1e-9, cfg.n_bulk));
    }
    {
        Rng rng = root.derive(13);
        double worst = 0.0;
        const int count = std::max(1, cfg.n_bulk / 5);
        for (int t = 0; t < count; ++t) {
            const QSeries kernel = kernel_series(random_kernel(rng), cfg.order);
            for (double m : check_coefficient_bounds(kernel)) worst = std::max(worst, std::abs(m));
            // a strict two-kernel mix must sit strictly inside the bound at n = 1
            HerglotzMix mix;
            const double lambda = rng.uniform(0.2, 0.8);
            mix.weights = {lambda, 1.0 - lambda};
            mix.kernels = {random_kernel(rng), random_kernel(rng)};
            const Quaternion u0 = exp_slice(mix.kernels[0].unit, mix.kernels[0].theta);
            const Quaternion u1 = exp_slice(mix.kernels[1].unit, mix.kernels[1].theta);
            if ((u0 - u1).norm() > 1e-6) {
                const QSeries f = mix_series(mix, cfg.order);
                if (!(2.0 - f[1].norm() > 0.0)) worst = std::max(worst, 1.0);
            }
        }
        results.push_back(finish(cfg, "coefficient-sharpness", worst, 1e-12, count));
    }
    {
        Rng rng = root.derive(14);
        double worst_deriv = 0.0, worst_growth = 0.0;
        const int count = std::max(1, cfg.n_pairs);
        for (int t = 0; t < count; ++t) {
            const QSeries f = mix_series(random_mix(rng), cfg.order);
            const QSeries g = mobius_transform(f);
            worst_deriv = std::max(worst_deriv, g[1].norm() - 1.0);
            for (int p = 0; p < cfg.n_points; ++p) {
                const Quaternion q = random_in_ball(rng, 0.6);
                const double allowance = tail_bound(2.0, cfg.order, q.norm());
                worst_growth = std::max(worst_growth, eval(g, q).norm() - q.norm() - allowance);
            }
        }
        results.push_back(finish(cfg, "schwarz-deriv", worst_deriv, 1e-10, count));
        results.push_back(finish(cfg, "schwarz-growth", worst_growth, 1e-9,
                                 static_cast<long long>(count) * cfg.n_points));
    }
    {
        // affine kernel images u - v K: sup Re is exactly u, and the bounds of
        // the sup-controlled family are sharp on this family
        Rng rng = root.derive(15);
        double worst = 0.0;
        const int count = std::max(1, cfg.n_pairs);
        const double radius = 0.5;
        const int n_max = std::min(4, cfg.order);
        for (int t = 0; t < count; ++t) {
            const double u = rng.uniform(0.5, 2.0);
            const double v = rng.uniform(0.2, 1.0);
            const QSeries f =
                scale_real(kernel_series(random_kernel(rng), cfg.order), -v) +
                QSeries::constant(Quaternion{u}, cfg.order);
            const std::vector<Quaternion> pts = sample_ball_points(rng, cfg.n_points, radius);
            const BorelReport rep = check_borel_caratheodory(f, u, radius, pts, n_max);
            for (double m : rep.coeff_margins) worst = std::max(worst, -m);
            worst = std::max(worst,
                             -(rep.growth_margin + tail_bound(2.0 * v, cfg.order, radius)));
            worst = std::max(worst,
                             -(rep.realpart_margin + tail_bound(2.0 * v, cfg.order, radius)));
            for (int n = 1; n <= n_max; ++n) {
                const double allowance = derivative_tail_bound(2.0 * v, cfg.order, radius, n);
                worst = std::max(worst,
                                 -(rep.derivative_margins[static_cast<std::size_t>(n) - 1] +
                                   allowance));
            }
        }
        results.push_back(finish(cfg, "borel-analytic", worst, 1e-9, count));
    }
    {
        Rng rng = root.derive(16);
        double worst = 0.0;
        const int count = std::max(1, cfg.n_pairs);
        const double radius = 0.5;
        for (int t = 0; t < count; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const double a_est = sup_re_estimate(f, cfg.n_theta, cfg.n_sphere);
            const std::vector<Quaternion> pts = sample_ball_points(rng, cfg.n_points, radius);
            const int n_max = std::min(4, f.order());
            const BorelReport rep = check_borel_caratheodory(f, a_est, radius, pts, n_max);
            for (double m : rep.coeff_margins) worst = std::max(worst, -m);
            worst = std::max(worst, -rep.growth_margin);
            worst = std::max(worst, -rep.realpart_margin);
            for (double m : rep.derivative_margins) worst = std::max(worst, -m);
        }
        results.push_back(finish(cfg, "borel-sampled", worst, 1e-4, count));
    }
    {
        Rng rng = root.derive(17);
        double worst = 0.0;
        long long samples = 0;
        for (int n0 = 1; n0 <= 6; ++n0) {
            for (int variant = 0; variant < 2; ++variant) {
                const UnitImaginary unit = random_unit_imaginary(rng);
                const QSeries f = variant == 0
                                      ? kernel_series(random_kernel(rng), cfg.order)
                                      : mix_series(random_mix(rng), cfg.order);
                const std::vector<std::complex<double>> zs = sample_disk_points(rng, 50, 0.7);
                const double allowance = tail_bound(2.0, cfg.order, 0.7);
                worst = std::max(worst,
                                 averaging_identity_check(f, n0, unit, zs) - allowance);
                // honor the "any primitive root" quantifier with a non-principal one
                if (n0 >= 3) {
                    worst = std::max(worst, averaging_identity_check(f, n0, unit, zs, n0 - 1) -
                                                allowance);
                }
                samples += 50;
            }
        }
        results.push_back(finish(cfg, "averaging-residual", worst, 1e-10, samples));
    }
    {
        Rng rng = root.derive(18);
        double worst = 0.0;
        const int count = std::max(1, cfg.n_bulk / 5);
        for (int t = 0; t < count; ++t) {
            const KernelSpec spec = random_kernel(rng);
            const double r = rng.uniform(0.05, 0.9);
            const Quaternion plus = r * exp_slice(spec.unit, -spec.theta);
            const Quaternion minus = -1.0 * plus;
            worst = std::max(worst, (kernel_eval_closed(spec, plus) -
                                     Quaternion{(1.0 + r) / (1.0 - r)})
                                        .norm());
            worst = std::max(worst, (kernel_eval_closed(spec, minus) -
                                     Quaternion{(1.0 - r) / (1.0 + r)})
                                        .norm());
        }
        results.push_back(finish(cfg, "kernel-equality-points", worst, 1e-12, count));
    }
    {
        Rng rng = root.derive(19);
        double worst = 0.0;
        const int count = std::max(1, cfg.n_bulk / 10);
        for (int t = 0; t < count; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const double a_val = sup_re_estimate(f, 256, 32) + rng.uniform(0.1, 1.0);
            const double dev = a_val - f[0].re();
            const QSeries g = equivalence_transform(f, a_val);
            for (int n = 1; n <= f.order(); ++n) {
                const double direct = 2.0 * dev - f[n].norm();
                const double via_transform = (2.0 - g[n].norm()) * dev;
                worst = std::max(worst, std::abs(direct - via_transform));
            }
        }
        results.push_back(finish(cfg, "equivalence-roundtrip", worst, 1e-12, count));
    }

    return results;
}

} // namespace slicereg
