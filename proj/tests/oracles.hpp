// Independent oracles for the test suite. These deliberately avoid the
// library's own algorithms: rank via determinant minors, partition counts
// via direct enumeration, permutation signs via cycle decomposition.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "spicy/field.hpp"
#include "spicy/linalg.hpp"

namespace oracle {

template <class F>
typename F::Element det_laplace(const F& f, const std::vector<spicy::Vec<F>>& rows) {
    const std::size_t n = rows.size();
    if (n == 1)
        return rows[0][0];
    typename F::Element out = f.zero();
    for (std::size_t r = 0; r < n; ++r) {
        if (f.is_zero(rows[r][0]))
            continue;
        std::vector<spicy::Vec<F>> minor;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r)
                continue;
            minor.push_back(spicy::Vec<F>(rows[i].begin() + 1, rows[i].end()));
        }
        typename F::Element term = f.mul(rows[r][0], det_laplace(f, minor));
        out = (r % 2 == 0) ? f.add(out, term) : f.sub(out, term);
    }
    return out;
}

/// Rank as the size of the largest square submatrix with nonzero determinant.
/// Exponential; for small matrices only.
template <class F>
std::uint32_t brute_rank(const F& f, const spicy::Matrix<F>& m) {
    std::vector<spicy::Vec<F>> rows;
    for (std::uint32_t r = 0; r < m.rows(); ++r)
        rows.push_back(m.dense_row(f, r));
    std::uint32_t best = 0;
    for (std::uint32_t size = 1; size <= std::min(m.rows(), m.cols()); ++size) {
        bool found = false;
        std::vector<std::uint32_t> rsel(size), csel(size);
        auto next_subset = [](std::vector<std::uint32_t>& sel, std::uint32_t n) {
            std::uint32_t k = static_cast<std::uint32_t>(sel.size());
            for (std::uint32_t i = k; i-- > 0;) {
                if (sel[i] + (k - i) < n) {
                    ++sel[i];
                    for (std::uint32_t j = i + 1; j < k; ++j)
                        sel[j] = sel[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        std::iota(rsel.begin(), rsel.end(), 0);
        do {
            std::vector<std::uint32_t> cinit(size);
            std::iota(cinit.begin(), cinit.end(), 0);
            csel = cinit;
            do {
                std::vector<spicy::Vec<F>> sub;
                for (std::uint32_t r : rsel) {
                    spicy::Vec<F> row;
                    for (std::uint32_t c : csel)
                        row.push_back(rows[r][c]);
                    sub.push_back(std::move(row));
                }
                if (!f.is_zero(det_laplace(f, sub))) {
                    found = true;
                    break;
                }
            } while (next_subset(csel, m.cols()));
            if (found)
                break;
        } while (next_subset(rsel, m.rows()));
        if (found)
            best = size;
        else
            break;
    }
    return best;
}

/// Number of partitions of n into distinct parts, by direct enumeration.
inline std::uint64_t count_distinct_partitions(std::uint32_t n) {
    std::uint64_t count = 0;
    auto dfs = [&](auto&& self, std::uint32_t next, std::uint32_t left) -> void {
        if (left == 0) {
            ++count;
            return;
        }
        for (std::uint32_t p = next; p <= left; ++p)
            self(self, p + 1, left - p);
    };
    dfs(dfs, 1, n);
    return count;
}

/// Number of partitions of n into odd parts (with repetition), by enumeration.
inline std::uint64_t count_odd_partitions(std::uint32_t n) {
    std::uint64_t count = 0;
    auto dfs = [&](auto&& self, std::uint32_t next, std::uint32_t left) -> void {
        if (left == 0) {
            ++count;
            return;
        }
        for (std::uint32_t p = next; p <= left; p += 2)
            self(self, p, left - p);
    };
    dfs(dfs, 1, n);
    return count;
}

/// Permutation sign via cycle decomposition (perm maps position -> value,
/// 0-based, a bijection on {0..n-1}).
inline int perm_sign_cycles(const std::vector<std::uint32_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        std::size_t len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        if (len % 2 == 0)
            sign = -sign;
    }
    return sign;
}

}  // namespace oracle
