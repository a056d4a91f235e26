#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "spicy/error.hpp"
#include "spicy/field.hpp"
#include "spicy/kernels.hpp"

namespace spicy {

template <class F>
using Vec = std::vector<typename F::Element>;

namespace detail {

/// dst += c * src on dense rows; the F_p path goes through the dispatched kernels.
template <class F>
void row_axpy(const F& f, Vec<F>& dst, const Vec<F>& src, const typename F::Element& c) {
    if (f.is_zero(c))
        return;
    if constexpr (is_prime_field_v<F>) {
        kern::active_kernels().axpy(dst.data(), src.data(), c, dst.size(), f.modulus());
    } else {
        for (std::size_t i = 0; i < dst.size(); ++i)
            if (!f.is_zero(src[i]))
                dst[i] = f.add(dst[i], f.mul(c, src[i]));
    }
}

template <class F>
void row_scale(const F& f, Vec<F>& v, const typename F::Element& c) {
    if constexpr (is_prime_field_v<F>) {
        kern::active_kernels().scale(v.data(), c, v.size(), f.modulus());
    } else {
        for (auto& x : v)
            x = f.mul(c, x);
    }
}

}  // namespace detail

/// Sparse matrix with only nonzero entries stored.
template <class F>
class Matrix {
  public:
    using Elt = typename F::Element;

    Matrix(std::uint32_t rows, std::uint32_t cols) : rows_(rows), cols_(cols) {}

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

    void set(const F& f, std::uint32_t r, std::uint32_t c, const Elt& v) {
        if (r >= rows_ || c >= cols_)
            throw Error(Diag::dimension_mismatch, "matrix index out of range");
        if (f.is_zero(v))
            entries_.erase({r, c});
        else
            entries_[{r, c}] = v;
    }

    const std::map<std::pair<std::uint32_t, std::uint32_t>, Elt>& entries() const {
        return entries_;
    }

    Vec<F> dense_row(const F& f, std::uint32_t r) const {
        Vec<F> out(cols_, f.zero());
        auto it = entries_.lower_bound({r, 0});
        for (; it != entries_.end() && it->first.first == r; ++it)
            out[it->first.second] = it->second;
        return out;
    }

    static Matrix from_rows(const F& f, const std::vector<Vec<F>>& rows, std::uint32_t cols) {
        Matrix m(static_cast<std::uint32_t>(rows.size()), cols);
        for (std::uint32_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw Error(Diag::dimension_mismatch, "row length != cols");
            for (std::uint32_t c = 0; c < cols; ++c)
                if (!f.is_zero(rows[r][c]))
                    m.entries_[{r, c}] = rows[r][c];
        }
        return m;
    }

  private:
    std::uint32_t rows_, cols_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Elt> entries_;
};

/// Row space held in reduced row-echelon form, with incremental insertion.
/// Pivot entries are 1 and are the only nonzeros in their column, pivots
/// strictly increasing. Below `dense_cutoff` columns rows are dense arrays,
/// above they are sorted (col, coeff) lists.
template <class F>
class SpanBasis {
  public:
    using Elt = typename F::Element;
    static constexpr std::uint32_t dense_cutoff = 64;

    SpanBasis(const F& f, std::uint32_t dim)
        : field_(f), dim_(dim), dense_(dim < dense_cutoff) {}

    std::uint32_t dim() const { return dim_; }
    std::size_t size() const { return pivots_.size(); }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }

    Vec<F> row(std::size_t i) const {
        if (dense_)
            return drows_[i];
        Vec<F> out(dim_, field_.zero());
        for (const auto& [c, v] : srows_[i])
            out[c] = v;
        return out;
    }

    /// Coefficients of v in this basis, or nullopt if v is outside the span.
    std::optional<Vec<F>> in_span(const Vec<F>& v) const {
        check_dim(v);
        Vec<F> coeffs;
        coeffs.reserve(pivots_.size());
        Vec<F> r = reduce(v, &coeffs);
        for (const auto& x : r)
            if (!field_.is_zero(x))
                return std::nullopt;
        return coeffs;
    }

    /// Adds v to the span; returns false (and changes nothing) if already inside.
    bool insert(const Vec<F>& v) {
        check_dim(v);
        Vec<F> r = reduce(v, nullptr);
        std::uint32_t lead = dim_;
        for (std::uint32_t i = 0; i < dim_; ++i)
            if (!field_.is_zero(r[i])) {
                lead = i;
                break;
            }
        if (lead == dim_)
            return false;
        detail::row_scale(field_, r, field_.inv(r[lead]));
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
        if (dense_) {
            for (auto& row : drows_) {
                Elt c = row[lead];
                if (!field_.is_zero(c))
                    detail::row_axpy(field_, row, r, field_.neg(c));
            }
            drows_.insert(drows_.begin() + pos, std::move(r));
        } else {
            auto rs = sparsify(r);
            for (auto& row : srows_) {
                Elt c = coeff_at(row, lead);
                if (!field_.is_zero(c))
                    row = sparse_axpy(row, rs, field_.neg(c));
            }
            srows_.insert(srows_.begin() + pos, std::move(rs));
        }
        pivots_.insert(pivots_.begin() + pos, lead);
        return true;
    }

  private:
    void check_dim(const Vec<F>& v) const {
        if (v.size() != dim_)
            throw Error(Diag::dimension_mismatch,
                        "vector length " + std::to_string(v.size()) + " != ambient " +
                            std::to_string(dim_));
    }

    // v minus its projection; RREF makes the coefficient at pivot i simply v[pivot_i]
    Vec<F> reduce(const Vec<F>& v, Vec<F>* coeffs) const {
        Vec<F> r = v;
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            Elt c = r[pivots_[i]];
            if (coeffs)
                coeffs->push_back(c);
            if (field_.is_zero(c))
                continue;
            if (dense_) {
                detail::row_axpy(field_, r, drows_[i], field_.neg(c));
            } else {
                for (const auto& [col, x] : srows_[i])
                    r[col] = field_.sub(r[col], field_.mul(c, x));
            }
            r[pivots_[i]] = field_.zero();
        }
        return r;
    }

    std::vector<std::pair<std::uint32_t, Elt>> sparsify(const Vec<F>& v) const {
        std::vector<std::pair<std::uint32_t, Elt>> out;
        for (std::uint32_t i = 0; i < v.size(); ++i)
            if (!field_.is_zero(v[i]))
                out.emplace_back(i, v[i]);
        return out;
    }

    Elt coeff_at(const std::vector<std::pair<std::uint32_t, Elt>>& row, std::uint32_t col) const {
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, std::uint32_t c) { return e.first < c; });
        return (it != row.end() && it->first == col) ? it->second : field_.zero();
    }

    std::vector<std::pair<std::uint32_t, Elt>> sparse_axpy(
        const std::vector<std::pair<std::uint32_t, Elt>>& a,
        const std::vector<std::pair<std::uint32_t, Elt>>& b, const Elt& c) const {
        std::vector<std::pair<std::uint32_t, Elt>> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, field_.mul(c, b[j].second));
                ++j;
            } else {
                Elt s = field_.add(a[i].second, field_.mul(c, b[j].second));
                if (!field_.is_zero(s))
                    out.emplace_back(a[i].first, s);
                ++i, ++j;
            }
        }
        return out;
    }

    F field_;
    std::uint32_t dim_;
    bool dense_;
    std::vector<Vec<F>> drows_;
    std::vector<std::vector<std::pair<std::uint32_t, Elt>>> srows_;
    std::vector<std::uint32_t> pivots_;
};

template <class F>
SpanBasis<F> row_space(const F& f, const Matrix<F>& m) {
    SpanBasis<F> span(f, m.cols());
    for (std::uint32_t r = 0; r < m.rows(); ++r)
        span.insert(m.dense_row(f, r));
    return span;
}

/// Dimension of the row space.
template <class F>
std::uint32_t rank(const F& f, const Matrix<F>& m) {
    return static_cast<std::uint32_t>(row_space(f, m).size());
}

/// Null-space basis in free-variable form: one vector per free column f,
/// with 1 at f and the negated pivot-row entries above, ordered by f.
template <class F>
std::vector<Vec<F>> kernel_basis(const F& f, const Matrix<F>& m) {
    SpanBasis<F> span = row_space(f, m);
    const auto& pivots = span.pivots();
    std::vector<Vec<F>> out;
    std::size_t pi = 0;
    for (std::uint32_t c = 0; c < m.cols(); ++c) {
        if (pi < pivots.size() && pivots[pi] == c) {
            ++pi;
            continue;
        }
        Vec<F> k(m.cols(), f.zero());
        k[c] = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i)
            k[pivots[i]] = f.neg(span.row(i)[c]);
        out.push_back(std::move(k));
    }
    return out;
}

template <class F>
std::optional<Vec<F>> in_span(const Vec<F>& v, const SpanBasis<F>& basis) {
    return basis.in_span(v);
}

}  // namespace spicy
