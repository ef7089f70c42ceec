#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "slicereg/caratheodory.hpp"
#include "slicereg/evaluation.hpp"
#include "slicereg/generators.hpp"
#include "slicereg/random.hpp"

using namespace slicereg;
using oracles::power_sum_eval;

TEST_CASE("evaluation") {
    SECTION("coefficients act from the right: [1, i] at j gives 1 - k") {
        const QSeries f(std::vector<Quaternion>{Quaternion::one(), Quaternion::i()});
        const Quaternion v = eval(f, Quaternion::j());
        // oracle: 1 + j i, and j i = -k
        CHECK((oracles::table_mul(Quaternion::j(), Quaternion::i()) + Quaternion::k()).norm() ==
              0.0);
        CHECK((v - Quaternion{1, 0, 0, -1}).norm() == 0.0);
    }

    SECTION("value at the origin is the constant term") {
        Rng rng(41);
        const QSeries f = random_series_flat(rng, 12);
        CHECK((eval(f, Quaternion::zero()) - f[0]).norm() == 0.0);
    }

    SECTION("Horner agrees with the explicit power sum") {
        Rng rng(42);
        for (int t = 0; t < 300; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const Quaternion q = random_in_ball(rng, 0.9);
            CHECK((eval(f, q) - power_sum_eval(f, q)).norm() <= 1e-13);
        }
    }

    SECTION("truncated kernel matches the closed form within the tail") {
        const KernelSpec spec{UnitImaginary::i(), 0.9};
        const QSeries k = kernel_series(spec, 64);
        const Quaternion q{0, 0, 0.3, 0};
        const double allowance = tail_bound(2.0, 64, 0.3);
        CHECK((eval(k, q) - kernel_eval_closed(spec, q)).norm() <= allowance + 1e-12);
    }
}

TEST_CASE("t_map") {
    Rng rng(43);

    SECTION("real-coefficient series act trivially") {
        const QSeries f(std::vector<Quaternion>{Quaternion{1}, Quaternion{0.3}, Quaternion{-0.2}});
        for (int t = 0; t < 50; ++t) {
            const Quaternion q = random_in_ball(rng, 0.8);
            CHECK((t_map(f, q) - q).norm() <= 1e-12);
        }
    }

    SECTION("real points are fixed") {
        const QSeries f = random_series_graded(rng, 16);
        const Quaternion q{0.37};
        CHECK((t_map(f, q) - q).norm() <= 1e-12);
    }

    SECTION("preserves modulus and real part on the sphere |q| = 0.7") {
        for (int t = 0; t < 300; ++t) {
            const QSeries f = random_series_graded(rng, 16);
            Quaternion q = random_in_ball(rng, 0.9);
            q *= 0.7 / q.norm();
            const Quaternion image = t_map(f, q);
            CHECK(std::abs(image.norm() - 0.7) <= 1e-12);
            CHECK(std::abs(image.re() - q.re()) <= 1e-12);
        }
    }

    SECTION("T_{f^c} inverts T_f") {
        for (int t = 0; t < 300; ++t) {
            const QSeries f = random_series_graded(rng, 16);
            const Quaternion q = random_in_ball(rng, 0.4);
            const Quaternion back = t_map(regular_conjugate(f), t_map(f, q));
            CHECK((back - q).norm() <= 1e-10);
        }
    }

    SECTION("near-zero evaluation of f^c is flagged") {
        // f = 1 - 2q has f^c(0.5) = 0
        const QSeries f(std::vector<Quaternion>{Quaternion{1}, Quaternion{-2}});
        CHECK_THROWS_AS(t_map(f, Quaternion{0.5}), EvalNearZeroSet);
    }
}

TEST_CASE("pointwise star evaluation") {
    Rng rng(44);

    SECTION("left factor 1 reduces to g") {
        const QSeries one = QSeries::constant(Quaternion::one(), 16);
        const QSeries g = random_series_flat(rng, 16);
        const Quaternion q = random_in_ball(rng, 0.7);
        CHECK((pointwise_star_eval(one, g, q) - eval(g, q)).norm() <= 1e-13);
    }

    SECTION("zero clause") {
        const QSeries f(std::vector<Quaternion>{Quaternion{1}, Quaternion{-2}});
        const QSeries g = random_series_flat(rng, 1);
        CHECK(pointwise_star_eval(f, g, Quaternion{0.5}).norm() == 0.0);
    }

    SECTION("coheres with evaluating the ⋆-product series") {
        for (int t = 0; t < 300; ++t) {
            const QSeries f = random_series_flat(rng, 32);
            const QSeries g = random_series_flat(rng, 32);
            const Quaternion q = random_in_ball(rng, 0.5);
            const double bound =
                tail_bound(33.0 * f.max_coeff_norm() * g.max_coeff_norm(), 32, q.norm());
            CHECK((eval(star_mul(f, g), q) - pointwise_star_eval(f, g, q)).norm() <=
                  bound + 1e-13);
        }
    }
}

TEST_CASE("quotient evaluation") {
    Rng rng(45);

    SECTION("a function divided by itself") {
        for (int t = 0; t < 50; ++t) {
            const QSeries f = random_series_graded(rng, 16);
            const Quaternion q = random_in_ball(rng, 0.4);
            CHECK((quotient_eval(f, f, q) - Quaternion::one()).norm() <= 1e-12);
        }
    }

    SECTION("real constant numerator scales pointwise") {
        const Quaternion c{2.5};
        const QSeries f = QSeries::constant(c, 16);
        const QSeries g = random_series_flat(rng, 16);
        const Quaternion q = random_in_ball(rng, 0.6);
        CHECK((quotient_eval(f, g, q) - c.inverse() * eval(g, q)).norm() <= 1e-13);
    }

    SECTION("quaternion constant numerator conjugates the argument") {
        // dividing by a non-real constant c still moves the evaluation point:
        // (c^{-*} ⋆ g)(q) = c^{-1} g(conj(c)^{-1} q conj(c))
        const Quaternion c{2, -1, 0.5, 0};
        const QSeries f = QSeries::constant(c, 16);
        const QSeries g = random_series_flat(rng, 16);
        const Quaternion q = random_in_ball(rng, 0.6);
        const Quaternion moved = c.conj().inverse() * q * c.conj();
        CHECK((quotient_eval(f, g, q) - c.inverse() * eval(g, moved)).norm() <= 1e-13);
        // and it agrees with evaluating the reciprocal series
        CHECK((quotient_eval(f, g, q) - eval(star_mul(regular_reciprocal(f), g), q)).norm() <=
              1e-13);
    }

    SECTION("coheres with the reciprocal series") {
        for (int t = 0; t < 200; ++t) {
            const QSeries f = random_series_graded(rng, 32);
            const QSeries g = random_series_flat(rng, 32);
            const Quaternion q = random_in_ball(rng, 0.4);
            const QSeries quotient = star_mul(regular_reciprocal(f), g);
            const double bound =
                tail_bound(2.0 * std::max(1.0, quotient.max_coeff_norm()), 32, q.norm());
            CHECK((eval(quotient, q) - quotient_eval(f, g, q)).norm() <= bound + 1e-10);
        }
    }
}

TEST_CASE("splitting") {
    Rng rng(46);

    SECTION("real coefficients leave G empty") {
        const QSeries f(std::vector<Quaternion>{Quaternion{1}, Quaternion{-0.5}, Quaternion{2}});
        const SplitPair parts = split(f, UnitImaginary::i(), UnitImaginary::j());
        for (const Quaternion& g : parts.g_coeffs) CHECK(g.norm() == 0.0);
        for (int n = 0; n <= f.order(); ++n) CHECK((parts.f_coeffs[(std::size_t)n] - f[n]).norm() == 0.0);
    }

    SECTION("basis readout: a0 = j against I = i, J = j") {
        const QSeries f = QSeries::constant(Quaternion::j());
        const SplitPair parts = split(f, UnitImaginary::i(), UnitImaginary::j());
        CHECK(parts.f_coeffs[0].norm() == 0.0);
        CHECK((parts.g_coeffs[0] - Quaternion::one()).norm() == 0.0);
    }

    SECTION("reconstruction at slice points, two independent J per I") {
        for (int t = 0; t < 100; ++t) {
            const QSeries f = random_series_flat(rng, 16);
            const UnitImaginary unit_i = random_unit_imaginary(rng);
            const UnitImaginary base_j = orthogonal_unit(unit_i);
            const UnitImaginary alt_j = rotate_orthogonal(unit_i, base_j, rng.uniform(0.4, 5.8));
            for (const UnitImaginary& unit_j : {base_j, alt_j}) {
                const SplitPair parts = split(f, unit_i, unit_j);
                for (int p = 0; p < 50; ++p) {
                    const double r = 0.95 * std::sqrt(rng.uniform01());
                    const std::complex<double> z = std::polar(r, rng.uniform(0.0, 6.2831853));
                    const Quaternion direct = eval(f, slice_embed(z.real(), z.imag(), unit_i));
                    CHECK((parts.reconstruct(z) - direct).norm() <= 1e-12);
                }
            }
        }
    }

    SECTION("non-orthogonal J is rejected") {
        Rng rng2(47);
        const QSeries f = random_series_flat(rng2, 4);
        const UnitImaginary unit_i = UnitImaginary::i();
        const UnitImaginary skew = UnitImaginary::from_vector(0.6, 0.8, 0.0);
        CHECK_THROWS_AS(split(f, unit_i, skew), NotOrthogonal);
    }
}
