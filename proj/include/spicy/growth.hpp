#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spicy/hopf.hpp"
#include "spicy/linalg.hpp"
#include "spicy/rational.hpp"

namespace spicy {

/// q(n) = partitions into distinct parts, p_odd(n) = partitions into odd
/// parts. Exact tables via the standard one-dimensional DP.
class PartitionTable {
  public:
    explicit PartitionTable(std::uint32_t n_max) {
        q_.assign(n_max + 1, Int(0));
        podd_.assign(n_max + 1, Int(0));
        q_[0] = 1;
        for (std::uint32_t part = 1; part <= n_max; ++part)
            for (std::uint32_t s = n_max; s >= part; --s)
                q_[s] += q_[s - part];
        podd_[0] = 1;
        for (std::uint32_t part = 1; part <= n_max; part += 2)
            for (std::uint32_t s = part; s <= n_max; ++s)
                podd_[s] += podd_[s - part];
    }

    std::uint32_t n_max() const { return static_cast<std::uint32_t>(q_.size()) - 1; }
    const Int& q(std::uint32_t n) const { return q_.at(n); }
    const Int& p_odd(std::uint32_t n) const { return podd_.at(n); }

  private:
    std::vector<Int> q_;
    std::vector<Int> podd_;
};

inline Int q_distinct(std::uint32_t n) { return PartitionTable(n).q(n); }
inline Int p_odd(std::uint32_t n) { return PartitionTable(n).p_odd(n); }

struct EulerReport {
    bool pass = true;
    std::uint32_t n_max = 0;
    std::optional<std::uint32_t> first_mismatch;
};

/// Euler's identity q(n) = p_odd(n) on 0..n_max.
inline EulerReport euler_check(std::uint32_t n_max) {
    PartitionTable t(n_max);
    EulerReport r;
    r.n_max = n_max;
    for (std::uint32_t n = 0; n <= n_max; ++n) {
        if (t.q(n) != t.p_odd(n)) {
            r.pass = false;
            r.first_mismatch = n;
            break;
        }
    }
    return r;
}

/// log q(n) / sqrt(n), a diagnostic only (the limit is pi/sqrt(3)).
/// q(n) is exact; the transcendental step is double precision (53-bit
/// mantissa, >= 50 significant bits), via an exact mantissa/exponent split
/// so nothing overflows. Returned as the exact binary rational of the double.
inline Rat hr_ratio(std::uint32_t n) {
    if (n < 1)
        throw Error(Diag::precondition, "hr_ratio needs n >= 1");
    Int q = q_distinct(n);
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, q.get_mpz_t());
    double logq = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
    double ratio = logq / std::sqrt(static_cast<double>(n));
    Rat out(ratio);
    out.canonicalize();
    return out;
}

/// Independent primitives of one positive degree with |v_i| <= c*i.
template <class F>
struct PrimitiveSequence {
    std::vector<Element<F>> vectors;
    Rat c;
    std::uint32_t m = 0;
};

/// Validates the primitive-sequence conditions and packages the result.
template <class F>
PrimitiveSequence<F> make_primitive_sequence(const BialgebraInstance<F>& inst,
                                             std::vector<Element<F>> vectors, Rat c) {
    c.canonicalize();
    if (c <= 0)
        throw Error(Diag::precondition, "slope c must be positive");
    if (vectors.empty())
        throw Error(Diag::precondition, "empty vector list");
    const ModuleWindow<F>& mod = inst.module();
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto d = mod.degree_of(vectors[i]);
        if (!d || *d == 0)
            throw Error(Diag::not_homogeneous, "v_" + std::to_string(i + 1) +
                                                   " is not homogeneous of positive degree");
        if (i == 0)
            m = *d;
        else if (*d != m)
            throw Error(Diag::mixed_degree, "v_" + std::to_string(i + 1) + " has degree " +
                                                std::to_string(*d) + ", others " +
                                                std::to_string(m));
        if (mod.value_of(vectors[i]) > c * Rat(static_cast<long>(i + 1)))
            throw Error(Diag::value_bound, "|v_" + std::to_string(i + 1) + "| exceeds c*" +
                                               std::to_string(i + 1));
        if (!is_primitive(inst, vectors[i]))
            throw Error(Diag::not_primitive, "v_" + std::to_string(i + 1) + " is not primitive");
    }
    SpanBasis<F> span(mod.field(), static_cast<std::uint32_t>(mod.slice(m).size()));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        if (!span.insert(mod.coords(vectors[i], m)))
            throw Error(Diag::not_independent,
                        "v_" + std::to_string(i + 1) + " depends on its predecessors");
    return PrimitiveSequence<F>{std::move(vectors), std::move(c), m};
}

template <class F>
struct ExtractionResult {
    PrimitiveSequence<F> sequence;
    std::uint32_t k = 0;  // rank of the reduced-coproduct map on the input span
};

namespace detail {

template <class F>
Matrix<F> tensor_rows(const F& f, const std::vector<TensorElement<F>>& rows,
                      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& columns) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> col_of;
    for (std::uint32_t c = 0; c < columns.size(); ++c)
        col_of.emplace(columns[c], c);
    Matrix<F> m(static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(columns.size()));
    for (std::uint32_t r = 0; r < rows.size(); ++r)
        for (const auto& [pair, coeff] : rows[r].terms)
            m.set(f, r, col_of.at(pair), coeff);
    return m;
}

}  // namespace detail

/// Turns independent, equal-degree vectors with |v_i| <= c*i into a primitive
/// sequence: k = rank of A = Delta - 1(x)id - id(x)1 on their span; from each
/// consecutive block of k+1 vectors one kernel vector of A is extracted
/// (first reduced-echelon kernel vector, leading coefficient normalized to 1),
/// giving w_j with |w_j| <= j*c*(k+1). Output is re-verified before return.
template <class F>
ExtractionResult<F> extract_primitive_sequence(const BialgebraInstance<F>& inst,
                                               const std::vector<Element<F>>& vectors, Rat c) {
    c.canonicalize();
    if (c <= 0)
        throw Error(Diag::precondition, "slope c must be positive");
    const ModuleWindow<F>& mod = inst.module();
    const F& f = mod.field();
    if (vectors.empty())
        throw Error(Diag::precondition, "empty vector list");

    std::uint32_t m = 0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto d = mod.degree_of(vectors[i]);
        if (!d || *d == 0)
            throw Error(Diag::not_homogeneous, "v_" + std::to_string(i + 1) +
                                                   " is not homogeneous of positive degree");
        if (i == 0)
            m = *d;
        else if (*d != m)
            throw Error(Diag::mixed_degree, "v_" + std::to_string(i + 1) + " has degree " +
                                                std::to_string(*d) + ", others " +
                                                std::to_string(m));
        if (mod.value_of(vectors[i]) > c * Rat(static_cast<long>(i + 1)))
            throw Error(Diag::value_bound, "|v_" + std::to_string(i + 1) + "| exceeds c*" +
                                               std::to_string(i + 1));
    }
    {
        SpanBasis<F> span(f, static_cast<std::uint32_t>(mod.slice(m).size()));
        for (std::size_t i = 0; i < vectors.size(); ++i)
            if (!span.insert(mod.coords(vectors[i], m)))
                throw Error(Diag::not_independent,
                            "v_" + std::to_string(i + 1) + " depends on its predecessors");
    }

    std::vector<TensorElement<F>> images;
    std::set<std::pair<std::uint32_t, std::uint32_t>> support;
    for (const Element<F>& v : vectors) {
        images.push_back(reduced_coproduct(inst, v));
        for (const auto& [pair, coeff] : images.back().terms)
            support.insert(pair);
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> columns(support.begin(), support.end());
    std::uint32_t k = rank(f, detail::tensor_rows(f, images, columns));

    const std::size_t block = k + 1;
    if (vectors.size() < block)
        throw Error(Diag::insufficient_vectors,
                    "need at least k+1 = " + std::to_string(block) + " vectors, got " +
                        std::to_string(vectors.size()));

    std::vector<Element<F>> extracted;
    for (std::size_t j = 0; (j + 1) * block <= vectors.size(); ++j) {
        // columns of the transposed system = the block members
        std::vector<TensorElement<F>> block_images(images.begin() + j * block,
                                                   images.begin() + (j + 1) * block);
        Matrix<F> mt(static_cast<std::uint32_t>(columns.size()),
                     static_cast<std::uint32_t>(block));
        for (std::uint32_t r = 0; r < columns.size(); ++r)
            for (std::uint32_t t = 0; t < block; ++t) {
                auto it = block_images[t].terms.find(columns[r]);
                if (it != block_images[t].terms.end())
                    mt.set(f, r, t, it->second);
            }
        auto kernel = kernel_basis(f, mt);
        if (kernel.empty())
            throw Error(Diag::precondition, "block " + std::to_string(j + 1) +
                                                " has no kernel vector; rank bookkeeping broken");
        Vec<F> coeffs = kernel.front();
        typename F::Element lead = f.zero();
        for (const auto& x : coeffs)
            if (!f.is_zero(x)) {
                lead = x;
                break;
            }
        Element<F> w;
        typename F::Element scale = f.inv(lead);
        for (std::uint32_t t = 0; t < block; ++t)
            accumulate(f, w, vectors[j * block + t], f.mul(scale, coeffs[t]));
        extracted.push_back(std::move(w));
    }

    // re-verify everything the construction promises
    SpanBasis<F> wspan(f, static_cast<std::uint32_t>(mod.slice(m).size()));
    for (std::size_t j = 0; j < extracted.size(); ++j) {
        const Element<F>& w = extracted[j];
        if (w.is_zero() || !reduced_coproduct(inst, w).is_zero())
            throw Error(Diag::not_primitive,
                        "extracted w_" + std::to_string(j + 1) + " failed the primitive check");
        Rat bound = c * Rat(static_cast<long>(block)) * Rat(static_cast<long>(j + 1));
        if (mod.value_of(w) > bound)
            throw Error(Diag::value_bound, "extracted w_" + std::to_string(j + 1) +
                                               " violates |w| <= j*c*(k+1)");
        if (!wspan.insert(mod.coords(w, m)))
            throw Error(Diag::not_independent,
                        "extracted w_" + std::to_string(j + 1) + " is dependent");
    }

    Rat slope = c * Rat(static_cast<long>(block));
    slope.canonicalize();
    return ExtractionResult<F>{PrimitiveSequence<F>{std::move(extracted), slope, m}, k};
}

struct GrowthRow {
    std::uint32_t n = 0;
    Int q;
    std::uint32_t rank = 0;
    bool pass = false;
    std::vector<std::vector<std::uint32_t>> subsets;  // nonempty I, sum(I) <= n, omitted when terse
};

struct GrowthCertificate {
    FieldSpec field;
    Rat c;  // original slope; the bound below is checked as |v_I| <= c * sum(I)
    std::uint32_t m = 0;
    std::uint32_t n_requested = 0;
    std::uint32_t n_reached = 0;
    bool truncated = false;
    std::string truncation_reason;
    bool pass = true;
    std::string failure;
    std::vector<GrowthRow> rows;
};

/// Certifies rank{v_I : sum(I) <= n} >= q(n) for n = 1..n_max, with ranks
/// taken blockwise per degree m*|I|, and |v_I| <= c * sum(I) verified term
/// by term. A window overflow truncates the certificate at the largest
/// fully checked n.
template <class F>
GrowthCertificate certify_growth(const BialgebraInstance<F>& inst, const PrimitiveSequence<F>& seq,
                                 std::uint32_t n_max, bool collect_subsets = true) {
    const ModuleWindow<F>& mod = inst.module();
    const F& f = mod.field();
    // re-validate: certificates must not rest on unchecked inputs
    make_primitive_sequence(inst, seq.vectors, seq.c);

    GrowthCertificate cert;
    cert.field = f.spec();
    cert.c = seq.c;
    cert.m = seq.m;
    cert.n_requested = n_max;

    std::uint32_t n_cap = n_max;
    if (seq.vectors.size() < n_max) {
        n_cap = static_cast<std::uint32_t>(seq.vectors.size());
        cert.truncated = true;
        cert.truncation_reason =
            "sequence provides only " + std::to_string(n_cap) + " vectors";
    }

    // distinct-part subsets of {1..n_cap} with sum <= n_cap, bucketed by sum;
    // DFS in ascending-part order keeps each bucket lexicographic
    std::vector<std::vector<std::vector<std::uint32_t>>> by_sum(n_cap + 1);
    std::vector<std::uint32_t> prefix;
    auto dfs = [&](auto&& self, std::uint32_t next, std::uint32_t sum) -> void {
        if (!prefix.empty())
            by_sum[sum].push_back(prefix);
        for (std::uint32_t i = next; sum + i <= n_cap; ++i) {
            prefix.push_back(i);
            self(self, i + 1, sum + i);
            prefix.pop_back();
        }
    };
    dfs(dfs, 1, 0);

    PartitionTable table(n_cap);
    for (std::uint32_t s = 1; s <= n_cap; ++s)
        if (Int(static_cast<unsigned long>(by_sum[s].size())) != table.q(s))
            throw Error(Diag::precondition, "subset enumeration disagrees with the partition DP");

    std::map<std::uint32_t, SpanBasis<F>> block_span;  // |I| -> span in degree m*|I|
    std::uint32_t rank_total = 0;
    for (std::uint32_t n = 1; n <= n_cap; ++n) {
        bool overflow = false;
        for (const auto& I : by_sum[n]) {
            Element<F> vI;
            try {
                vI = product_vI(inst, seq.vectors, I);
            } catch (const OutOfWindow& e) {
                cert.truncated = true;
                cert.truncation_reason = e.what();
                overflow = true;
                break;
            }
            Rat sum_i(0);
            for (std::uint32_t i : I)
                sum_i += static_cast<long>(i);
            if (mod.value_of(vI) > seq.c * sum_i) {
                cert.pass = false;
                cert.failure = "|v_I| exceeds c*sum(I) for I ending at " + std::to_string(I.back());
                return cert;
            }
            std::uint32_t l = static_cast<std::uint32_t>(I.size());
            std::uint32_t deg = l * seq.m;
            auto it = block_span.find(l);
            if (it == block_span.end())
                it = block_span
                         .emplace(l, SpanBasis<F>(f, static_cast<std::uint32_t>(
                                                         mod.slice(deg).size())))
                         .first;
            if (it->second.insert(mod.coords(vI, deg)))
                ++rank_total;
        }
        if (overflow)
            break;
        GrowthRow row;
        row.n = n;
        row.q = table.q(n);
        row.rank = rank_total;
        row.pass = Int(static_cast<unsigned long>(rank_total)) >= table.q(n);
        if (collect_subsets)
            for (std::uint32_t s = 1; s <= n; ++s)
                for (const auto& I : by_sum[s])
                    row.subsets.push_back(I);
        cert.rows.push_back(std::move(row));
        cert.n_reached = n;
        if (!cert.rows.back().pass) {
            cert.pass = false;
            cert.failure = "rank " + std::to_string(rank_total) + " < q(" + std::to_string(n) +
                           ") = " + table.q(n).get_str();
            return cert;
        }
    }
    if (cert.truncated && cert.n_reached < cert.n_requested && cert.truncation_reason.empty())
        cert.truncation_reason = "window exhausted";
    return cert;
}

}  // namespace spicy
