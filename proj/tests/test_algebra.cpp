#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "algebra.hpp"
#include "rng.hpp"

using namespace dstbc;

namespace {

ComplexMatrix random_cmatrix(std::size_t r, std::size_t c, Rng& rng) {
    ComplexMatrix m(r, c);
    for (auto& v : m.data) v = {rng.gaussian(), rng.gaussian()};
    return m;
}

}  // namespace

TEST_CASE("split_real_imag basics") {
    ComplexMatrix m(1, 1);
    m(0, 0) = cplx{0.0, 1.0};
    auto [re, im] = split_real_imag(m);
    CHECK(re(0, 0) == 0.0);
    CHECK(im(0, 0) == 1.0);

    ComplexMatrix z(3, 2);
    auto [zr, zi] = split_real_imag(z);
    CHECK(max_abs(zr) == 0.0);
    CHECK(max_abs(zi) == 0.0);
}

TEST_CASE("split_real_imag on the 2-relay matrices") {
    // first relay matrix of the 2x2 orthogonal base
    ComplexMatrix a1(2, 4);
    a1(0, 0) = 1.0;
    a1(0, 1) = cplx{0, 1};
    a1(1, 2) = -1.0;
    a1(1, 3) = cplx{0, 1};
    auto [ai, aq] = split_real_imag(a1);
    RealMatrix want_i(2, 4), want_q(2, 4);
    want_i(0, 0) = 1;
    want_i(1, 2) = -1;
    want_q(0, 1) = 1;
    want_q(1, 3) = 1;
    CHECK(ai == want_i);
    CHECK(aq == want_q);
}

TEST_CASE("split then recombine is the identity") {
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        ComplexMatrix m = random_cmatrix(5, 7, rng);
        auto [re, im] = split_real_imag(m);
        CHECK(combine_real_imag(re, im) == m);
    }
}

TEST_CASE("is_block_diag_2x2") {
    SUBCASE("identity") {
        auto r = is_block_diag_2x2(RealMatrix::identity(4), 1e-9);
        CHECK(r.ok);
        REQUIRE(r.pattern.block_count == 2);
        CHECK(r.pattern.blocks[0] == std::array<double, 4>{1, 0, 0, 1});
    }
    SUBCASE("cross-family matrix of the 2-antenna Clifford code") {
        RealMatrix m(4, 4);
        m(0, 1) = m(1, 0) = 2;
        m(2, 3) = m(3, 2) = 2;
        CHECK(is_block_diag_2x2(m, 1e-9).ok);
    }
    SUBCASE("off-block entry breaks it") {
        RealMatrix m = RealMatrix::identity(4);
        m(0, 2) = 1.0;
        auto r = is_block_diag_2x2(m, 1e-9);
        CHECK_FALSE(r.ok);
        CHECK(r.off_row == 0);
        CHECK(r.off_col == 2);
        CHECK(r.max_off_block == 1.0);
    }
    SUBCASE("odd dimension rejected") {
        CHECK_THROWS_AS(is_block_diag_2x2(RealMatrix(3, 3), 1e-9), ValidationError);
    }
    SUBCASE("noise below tol on block entries only") {
        Rng rng(3);
        RealMatrix m = RealMatrix::identity(6);
        const double tol = 1e-6;
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    m(2 * b + i, 2 * b + j) += (rng.uniform() - 0.5) * tol;
        CHECK(is_block_diag_2x2(m, tol).ok);
    }
}

TEST_CASE("is_positive_definite_2x2") {
    CHECK(is_positive_definite_2x2({1, 0, 0, 1}, 1e-9));
    CHECK_FALSE(is_positive_definite_2x2({1, 0, 0, 0}, 1e-9));
    CHECK(is_positive_definite_2x2({2, 1, 1, 2}, 1e-9));  // det 3
    CHECK_FALSE(is_positive_definite_2x2({-1, 0, 0, -1}, 1e-9));
    CHECK_THROWS_AS(is_positive_definite_2x2({1, 0.5, -0.5, 1}, 1e-9), ContractError);
}

TEST_CASE("realify_channel") {
    SUBCASE("row [1, i]") {
        ComplexMatrix h(1, 2);
        h(0, 0) = 1.0;
        h(0, 1) = cplx{0, 1};
        RealMatrix r = realify_channel(h);
        CHECK(r == RealMatrix::identity(2));
    }
    SUBCASE("zero matrix") {
        CHECK(max_abs(realify_channel(ComplexMatrix(3, 4))) == 0.0);
    }
    SUBCASE("gram identity against the complex route") {
        Rng rng(7);
        for (int t = 0; t < 100; ++t) {
            ComplexMatrix h = random_cmatrix(4, 6, rng);
            RealMatrix r = realify_channel(h);
            RealMatrix gram = matmul_at_b(r, r);
            RealMatrix want = real_part(cmatmul_ah_b(h, h));
            for (std::size_t i = 0; i < gram.data.size(); ++i)
                CHECK(gram.data[i] == doctest::Approx(want.data[i]).epsilon(1e-12));
        }
    }
    SUBCASE("norm preservation") {
        Rng rng(8);
        for (int t = 0; t < 100; ++t) {
            ComplexMatrix h = random_cmatrix(5, 8, rng);
            RealMatrix r = realify_channel(h);
            std::vector<double> x(8);
            for (auto& v : x) v = rng.gaussian();
            auto yc = matvec(h, x);
            auto yr = matvec(r, x);
            double nc = 0, nr = 0;
            for (const auto& v : yc) nc += std::norm(v);
            for (double v : yr) nr += v * v;
            CHECK(nc == doctest::Approx(nr).epsilon(1e-12));
        }
    }
}

TEST_CASE("permutation_matrix") {
    SUBCASE("identity permutation") {
        const std::size_t id[] = {0, 1, 2};
        CHECK(permutation_matrix(id) == RealMatrix::identity(3));
    }
    SUBCASE("coordinate swap used by the 2-relay interleaver") {
        const std::size_t p[] = {0, 3, 2, 1};
        RealMatrix m = permutation_matrix(p);
        RealMatrix want(4, 4);
        want(0, 0) = want(3, 1) = want(2, 2) = want(1, 3) = 1;
        CHECK(m == want);
        // involution: applying it twice restores the identity
        CHECK(matmul(m, m) == RealMatrix::identity(4));
    }
    SUBCASE("transpose equals the inverse permutation") {
        const std::size_t p[] = {2, 0, 3, 1};
        std::size_t pinv[4];
        for (std::size_t k = 0; k < 4; ++k) pinv[p[k]] = k;
        CHECK(transpose(permutation_matrix(p)) == permutation_matrix(pinv));
    }
    SUBCASE("non-permutation rejected") {
        const std::size_t bad1[] = {0, 0, 1};
        const std::size_t bad2[] = {0, 5, 1};
        CHECK_THROWS_AS(permutation_matrix(bad1), ValidationError);
        CHECK_THROWS_AS(permutation_matrix(bad2), ValidationError);
    }
}

TEST_CASE("cholesky-free helpers behave") {
    Rng rng(11);
    ComplexMatrix a = random_cmatrix(3, 5, rng);
    ComplexMatrix b = random_cmatrix(3, 4, rng);
    ComplexMatrix g = cmatmul_ah_b(a, b);
    CHECK(g.rows == 5);
    CHECK(g.cols == 4);
    // conjugate twice is the identity
    CHECK(conjugate(conjugate(a)) == a);
}
