#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spicy/field.hpp"
#include "spicy/linalg.hpp"

using namespace spicy;

namespace {

template <class F>
Matrix<F> dense(const F& f, std::vector<std::vector<long>> rows, std::uint32_t cols) {
    std::vector<Vec<F>> converted;
    for (auto& r : rows) {
        Vec<F> row;
        for (long v : r)
            row.push_back(f.from_int(v));
        converted.push_back(std::move(row));
    }
    return Matrix<F>::from_rows(f, converted, cols);
}

template <class F>
bool kernel_annihilates(const F& f, const Matrix<F>& m, const std::vector<Vec<F>>& kernel) {
    for (const auto& k : kernel) {
        Vec<F> out(m.rows(), f.zero());
        for (const auto& [rc, v] : m.entries())
            out[rc.first] = f.add(out[rc.first], f.mul(v, k[rc.second]));
        for (const auto& x : out)
            if (!f.is_zero(x))
                return false;
    }
    return true;
}

}  // namespace

TEST_CASE("rank: pinned examples") {
    PrimeField F2(2);
    RationalField Q;
    CHECK(rank(Q, Matrix<RationalField>(3, 3)) == 0);  // zero map
    CHECK(rank(F2, dense(F2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 4)) == 4);
    auto ones = dense(F2, {{1, 1}, {1, 1}}, 2);
    CHECK(rank(F2, ones) == 1);
    CHECK(oracle::brute_rank(F2, ones) == 1);
}

TEST_CASE("kernel_basis: pinned examples") {
    PrimeField F2(2);
    RationalField Q;
    CHECK(kernel_basis(Q, dense(Q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3)).empty());

    auto k2 = kernel_basis(F2, dense(F2, {{1, 1}, {1, 1}}, 2));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == Vec<PrimeField>{1, 1});

    auto m = dense(Q, {{1, 2, 3}}, 3);
    auto kq = kernel_basis(Q, m);
    REQUIRE(kq.size() == 2);
    CHECK(kq[0] == Vec<RationalField>{Rat(-2), Rat(1), Rat(0)});
    CHECK(kq[1] == Vec<RationalField>{Rat(-3), Rat(0), Rat(1)});
    CHECK(kernel_annihilates(Q, m, kq));
}

TEST_CASE("in_span: pinned examples and errors") {
    RationalField Q;
    SpanBasis<RationalField> basis(Q, 2);
    basis.insert({Rat(1), Rat(1)});

    auto zero = basis.in_span({Rat(0), Rat(0)});
    REQUIRE(zero.has_value());
    CHECK(*zero == Vec<RationalField>{Rat(0)});

    auto two = basis.in_span({Rat(2), Rat(2)});
    REQUIRE(two.has_value());
    CHECK(*two == Vec<RationalField>{Rat(2)});

    SpanBasis<RationalField> e2(Q, 2);
    e2.insert({Rat(0), Rat(1)});
    CHECK(!e2.in_span({Rat(1), Rat(0)}).has_value());

    CHECK_THROWS_AS(basis.in_span({Rat(1)}), Error);
}

TEST_CASE("rank-nullity and kernel exactness, fuzzed over both fields") {
    std::mt19937_64 rng(42);
    PrimeField F3(3);
    RationalField Q;
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        Matrix<PrimeField> mp(rows, cols);
        Matrix<RationalField> mq(rows, cols);
        for (std::uint32_t r = 0; r < rows; ++r)
            for (std::uint32_t c = 0; c < cols; ++c)
                if (rng() % 3 == 0) {
                    long v = static_cast<long>(rng() % 7) - 3;
                    mp.set(F3, r, c, F3.from_int(v));
                    mq.set(Q, r, c, Q.from_int(v));
                }
        std::uint32_t rp = rank(F3, mp), rq = rank(Q, mq);
        CHECK(rp + kernel_basis(F3, mp).size() == cols);
        CHECK(rq + kernel_basis(Q, mq).size() == cols);
        CHECK(rp == oracle::brute_rank(F3, mp));
        CHECK(rq == oracle::brute_rank(Q, mq));
        CHECK(kernel_annihilates(F3, mp, kernel_basis(F3, mp)));
        CHECK(kernel_annihilates(Q, mq, kernel_basis(Q, mq)));
    }
}

TEST_CASE("incremental span insertion agrees with batch row reduction") {
    std::mt19937_64 rng(7);
    PrimeField F5(5);
    for (int trial = 0; trial < 25; ++trial) {
        std::uint32_t cols = 3 + rng() % 5;
        std::uint32_t nvec = 1 + rng() % 6;
        std::vector<Vec<PrimeField>> vecs;
        for (std::uint32_t i = 0; i < nvec; ++i) {
            Vec<PrimeField> v(cols, 0);
            for (auto& x : v)
                x = rng() % 5;
            vecs.push_back(v);
        }
        SpanBasis<PrimeField> incremental(F5, cols);
        for (const auto& v : vecs)
            incremental.insert(v);
        SpanBasis<PrimeField> batch = row_space(F5, Matrix<PrimeField>::from_rows(F5, vecs, cols));
        REQUIRE(incremental.size() == batch.size());
        CHECK(incremental.pivots() == batch.pivots());
        for (std::size_t i = 0; i < incremental.size(); ++i)
            CHECK(incremental.row(i) == batch.row(i));
    }
}

TEST_CASE("sparse elimination path (wide matrices) matches the dense path") {
    std::mt19937_64 rng(11);
    PrimeField F7(7);
    const std::uint32_t narrow = 20;
    const std::uint32_t wide = SpanBasis<PrimeField>::dense_cutoff + 16;
    for (int trial = 0; trial < 10; ++trial) {
        Matrix<PrimeField> small(6, narrow), embedded(6, wide);
        for (std::uint32_t r = 0; r < 6; ++r)
            for (std::uint32_t c = 0; c < narrow; ++c)
                if (rng() % 4 == 0) {
                    std::uint64_t v = 1 + rng() % 6;
                    small.set(F7, r, c, v);
                    embedded.set(F7, r, c, v);  // same columns, wider ambient
                }
        CHECK(rank(F7, small) == rank(F7, embedded));
        CHECK(kernel_basis(F7, embedded).size() == wide - rank(F7, embedded));
        CHECK(kernel_annihilates(F7, embedded, kernel_basis(F7, embedded)));
    }
}

TEST_CASE("two identical runs produce identical answers") {
    std::mt19937_64 rng(3);
    RationalField Q;
    Matrix<RationalField> m(5, 5);
    for (std::uint32_t r = 0; r < 5; ++r)
        for (std::uint32_t c = 0; c < 5; ++c)
            if (rng() % 2)
                m.set(Q, r, c, Rat(static_cast<long>(rng() % 9) - 4));
    auto k1 = kernel_basis(Q, m);
    auto k2 = kernel_basis(Q, m);
    CHECK(k1 == k2);
    CHECK(rank(Q, m) == rank(Q, m));
}
