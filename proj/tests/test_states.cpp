#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "entdetect/criteria.hpp"
#include "entdetect/families.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/state_io.hpp"
#include "entdetect/states.hpp"
#include "oracle.hpp"

using namespace entdetect;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double min_pt_eigenvalue(const DensityMatrix& rho) {
    return hermitian_eigenvalues(partial_transpose(rho, rho.parties() - 1))(0);
}

std::vector<double> sorted_eigs(const ComplexMatrix& m) { return oracle::hermitian_eigenvalues(m); }

} // namespace

TEST_CASE("density matrix construction") {
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(4, 4), {2, 3}), DimensionError);
    CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::Identity(4, 3), {2, 2}), DimensionError);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2) / 2.0;
    bad(0, 1) = std::nan("");
    CHECK_THROWS_AS(DensityMatrix(bad, {2}), NumericalError);
    const DensityMatrix ok(ComplexMatrix::Identity(6, 6) / 6.0, {2, 3});
    CHECK(ok.dim() == 6);
    CHECK(ok.parties() == 2);
}

TEST_CASE("validate") {
    const auto r = validate(DensityMatrix(ComplexMatrix::Identity(4, 4) / 4.0, {2, 2}));
    CHECK(r.valid());
    CHECK(r.hermiticity_defect <= 1e-15);
    CHECK(r.trace_defect <= 1e-15);
    CHECK(r.min_eigenvalue == doctest::Approx(0.25));

    CHECK(validate(bell_state()).valid());

    ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
    neg(0, 0) = 1.1;
    neg(1, 1) = -0.1;
    const auto rn = validate(DensityMatrix(neg, {2}));
    CHECK_FALSE(rn.valid());
    CHECK_FALSE(rn.positive());
    CHECK(rn.min_eigenvalue == doctest::Approx(-0.1));
    CHECK_THROWS_AS(require_valid(DensityMatrix(neg, {2})), InvalidArgument);

    ComplexMatrix nh = ComplexMatrix::Identity(2, 2) / 2.0;
    nh(0, 1) = 0.1;
    CHECK_FALSE(validate(DensityMatrix(nh, {2})).hermitian());
    CHECK_FALSE(validate(DensityMatrix(ComplexMatrix::Identity(2, 2), {2})).unit_trace());
}

TEST_CASE("white noise mixing") {
    const auto bell = bell_state();
    CHECK(max_abs(mix_with_white_noise(bell, 1.0).matrix() - bell.matrix()) == 0.0);
    CHECK(max_abs(mix_with_white_noise(bell, 0.0).matrix() - ComplexMatrix::Identity(4, 4) / 4.0) == 0.0);
    const auto ev = sorted_eigs(mix_with_white_noise(bell, 0.5).matrix());
    CHECK(ev[0] == doctest::Approx(0.125));
    CHECK(ev[2] == doctest::Approx(0.125));
    CHECK(ev[3] == doctest::Approx(0.625));
    CHECK_THROWS_AS(mix_with_white_noise(bell, 1.5), InvalidArgument);
    CHECK_THROWS_AS(mix_with_white_noise(bell, -0.1), InvalidArgument);

    // Affine in p.
    const auto rho = random_mixed({2, 3}, 3, 5);
    const auto m0 = mix_with_white_noise(rho, 0.0).matrix(), m1 = mix_with_white_noise(rho, 1.0).matrix();
    for (double p : {0.1, 0.37, 0.8}) {
        const ComplexMatrix expect = p * m1 + (1 - p) * m0;
        CHECK(max_abs(mix_with_white_noise(rho, p).matrix() - expect) <= 1e-15);
    }
}

TEST_CASE("Horodecki 2 x 4") {
    for (double d : {0.05, 0.3, 0.5, 0.9, 0.99}) {
        const auto rho = horodecki_2x4(d);
        CHECK(rho.dims() == Dims{2, 4});
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
        CHECK(validate(rho).valid());
        CHECK(min_pt_eigenvalue(rho) >= -1e-10);
    }
    const auto r9 = horodecki_2x4(0.9);
    CHECK(r9.matrix()(4, 4).real() == doctest::Approx(0.95 / 7.3).epsilon(1e-14));
    CHECK_THROWS_AS(horodecki_2x4(0.0), InvalidArgument);
    CHECK_THROWS_AS(horodecki_2x4(1.0), InvalidArgument);
    // PPT yet detected by realignment once mixed with the Bell state.
    CHECK_FALSE(ppt_test(r9).detected());
    CHECK(realignment_test(horodecki_2x4_bell_mixture(0.9, 0.3)).detected());
}

TEST_CASE("example 1 family") {
    const auto fam = example1_family(0.9);
    CHECK(max_abs(fam.at(0.0).matrix() - horodecki_2x4(0.9).matrix()) < 1e-15);
    const ComplexVector xi = (basis_ket({2, 4}, {0, 0}) + basis_ket({2, 4}, {1, 1})) / std::sqrt(2.0);
    CHECK(max_abs(fam.at(1.0).matrix() - projector(xi)) < 1e-15);
    const auto mid = fam.at(0.5);
    CHECK(validate(mid).valid());
    CHECK(std::abs(mid.matrix().trace().real() - 1.0) < 1e-12);
    CHECK_THROWS_AS(fam.at(1.5), InvalidArgument);
}

TEST_CASE("Horodecki 3 x 3") {
    for (int k = 1; k <= 20; ++k) {
        const double x = k / 21.0;
        const auto rho = horodecki_3x3(x);
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
        CHECK(validate(rho).valid());
        CHECK(min_pt_eigenvalue(rho) >= -1e-10);
        const auto r24 = horodecki_2x4(x);
        CHECK(min_pt_eigenvalue(r24) >= -1e-10);
    }
    const double x = 0.3, n = 1 + 8 * x;
    const auto m = horodecki_3x3(x).matrix();
    CHECK(m(7, 7).real() == doctest::Approx(x / n));
    CHECK(m(0, 4).real() == doctest::Approx(x / n));
    CHECK(m(4, 8).real() == doctest::Approx(x / n));
    CHECK(m(6, 6).real() == doctest::Approx((1 + x) / 2 / n));
    CHECK(m(6, 8).real() == doctest::Approx(std::sqrt(1 - x * x) / 2 / n));
    CHECK_THROWS_AS(horodecki_3x3(1.0), InvalidArgument);
}

TEST_CASE("tiles state") {
    const auto v = tiles_upb_vectors();
    REQUIRE(v.size() == 5);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            CHECK(std::abs(v[i].dot(v[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
    CHECK(std::abs(v[0].dot(v[4])) < 1e-15);
    const auto rho = tiles_upb_state();
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    const auto ev = sorted_eigs(rho.matrix());
    int quarter = 0;
    for (double e : ev) {
        if (std::abs(e - 0.25) < 1e-12) ++quarter;
        else CHECK(std::abs(e) < 1e-12);
    }
    CHECK(quarter == 4);
    CHECK(min_pt_eigenvalue(rho) >= -1e-10);
}

TEST_CASE("W-bar state") {
    CHECK(w_bar_vector().norm() == doctest::Approx(1.0).epsilon(1e-15));
    const auto rho = w_bar_state();
    CHECK(purity(rho.matrix()) == doctest::Approx(1.0).epsilon(1e-12));
    // Each single-site marginal is diag(1/3, 1/2, 1/6).
    for (int keep = 0; keep < 3; ++keep) {
        std::vector<int> traced;
        for (int k = 0; k < 3; ++k)
            if (k != keep) traced.push_back(k);
        const ComplexMatrix m = partial_trace(rho, traced);
        ComplexMatrix expect = ComplexMatrix::Zero(3, 3);
        expect(0, 0) = 1.0 / 3;
        expect(1, 1) = 0.5;
        expect(2, 2) = 1.0 / 6;
        CHECK(max_abs(m - expect) < 1e-15);
    }
}

TEST_CASE("GHZ states") {
    const auto g0 = ghz_epsilon_state(0.0);
    CHECK(max_abs(g0.matrix() - ghz3_state().matrix()) < 1e-15);
    for (double eps : {-2.0, 0.1, 1.0, 10.0}) {
        CHECK(std::abs(ghz_epsilon_state(eps).matrix().trace().real() - 1.0) < 1e-12);
        CHECK(validate(ghz_epsilon_state(eps)).valid());
    }
    const auto mu = schmidt_coefficients(ghz_epsilon_vector(1.0), 2, 4);
    CHECK(mu[0] == doctest::Approx(2.0 / 3));

    const auto ghz = ghz3_state();
    CHECK(purity(ghz.matrix()) == doctest::Approx(1.0));
    for (int keep = 0; keep < 3; ++keep) {
        std::vector<int> traced;
        for (int k = 0; k < 3; ++k)
            if (k != keep) traced.push_back(k);
        CHECK(max_abs(partial_trace(ghz, traced) - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
    }
    const auto ev = sorted_eigs(ghz3_noise_family().at(0.2).matrix());
    for (int i = 0; i < 7; ++i) CHECK(ev[i] == doctest::Approx(0.025));
    CHECK(ev[7] == doctest::Approx(0.825));
}

TEST_CASE("random states") {
    const auto prod = random_separable({2, 2}, 1, 3);
    const std::vector<int> a{0}, b{1};
    CHECK(purity(partial_trace(prod, a)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(purity(partial_trace(prod, b)) == doctest::Approx(1.0).epsilon(1e-12));

    const auto pure = random_pure({3, 2}, 4);
    CHECK(validate(pure).valid());
    CHECK(std::abs(purity(pure.matrix()) - 1.0) < 1e-12);

    const auto mixed = random_mixed({2, 2}, 4, 5);
    CHECK(std::abs(mixed.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(validate(mixed).valid());

    // Deterministic from the seed.
    CHECK(random_mixed({2, 3}, 2, 9).matrix() == random_mixed({2, 3}, 2, 9).matrix());
    CHECK(random_mixed({2, 3}, 2, 9).matrix() != random_mixed({2, 3}, 2, 10).matrix());

    for (std::uint64_t s = 0; s < 20; ++s) {
        CHECK(validate(random_separable({2, 3}, 4, s)).valid());
        CHECK(validate(random_separable({2, 2, 2}, 3, s)).valid());
        CHECK(validate(random_biseparable({2, 2, 2}, 3, s)).valid());
        const ComplexMatrix u = random_unitary(4, s);
        CHECK(max_abs(u * u.adjoint() - ComplexMatrix::Identity(4, 4)) < 1e-12);
    }
    // Separable states are PPT on every cut.
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto rho = random_separable({2, 2, 2}, 4, 100 + s);
        for (int k = 0; k < 3; ++k) CHECK(hermitian_eigenvalues(partial_transpose(rho, k))(0) > -1e-12);
    }
    CHECK_THROWS_AS(random_biseparable({2, 2}, 2, 1), InvalidArgument);
    CHECK_THROWS_AS(random_mixed({2}, 0, 1), InvalidArgument);
}

TEST_CASE("built-in families") {
    for (const auto& id : builtin_family_ids()) {
        const auto fam = make_builtin_family(id);
        CHECK(fam.id == id);
        for (int k = 0; k <= 10; ++k) {
            const double v = fam.lo + (fam.hi - fam.lo) * k / 10.0;
            CHECK(validate(fam.at(v)).valid());
        }
    }
    CHECK(make_builtin_family("example1", {{"d", 0.5}}).fixed.at("d") == 0.5);
    CHECK_THROWS_AS(make_builtin_family("example1", {{"eps", 1}}), InvalidArgument);
    CHECK_THROWS_AS(make_builtin_family("example9"), InvalidArgument);
    const auto c = constant_family(bell_state());
    CHECK(c.at(0.3).matrix() == bell_state().matrix());
}

TEST_CASE("state file round trip") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto rho = random_mixed({2, 3}, 3, 40 + s);
        const auto back = state_from_json(state_to_json(rho));
        CHECK(back.dims() == rho.dims());
        CHECK(back.matrix() == rho.matrix());
    }
    const auto rho = horodecki_2x4(0.9);
    const std::string path = "roundtrip_state.json";
    write_state_file(path, rho);
    const auto back = read_state_file(path);
    CHECK(back.matrix() == rho.matrix());
    std::remove(path.c_str());

    // 17 significant digits in the written text.
    const std::string text = state_to_json(DensityMatrix(ComplexMatrix::Identity(3, 3) / 3.0, {3}));
    CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("state file errors") {
    CHECK_THROWS_AS(state_from_json("not json"), FormatError);
    CHECK_THROWS_AS(state_from_json("[]"), FormatError);
    CHECK_THROWS_WITH_AS(state_from_json(R"({"matrix": []})"), doctest::Contains("dims"), FormatError);
    CHECK_THROWS_WITH_AS(state_from_json(R"({"dims": [2, 2], "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]]})"),
                         doctest::Contains("2 rows but dims multiply to 4"), FormatError);
    CHECK_THROWS_WITH_AS(state_from_json(R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0]]]})"),
                         doctest::Contains("row 1"), FormatError);
    CHECK_THROWS_WITH_AS(state_from_json(R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0],[1]]]})"),
                         doctest::Contains("matrix[1][1]"), FormatError);
    CHECK_THROWS_WITH_AS(state_from_json(R"({"dims": [0], "matrix": []})"), doctest::Contains("dims[0]"),
                         FormatError);
    CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), Error);
}
