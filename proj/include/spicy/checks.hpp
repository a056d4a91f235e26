#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spicy/hopf.hpp"
#include "spicy/parallel.hpp"

namespace spicy {

/// Outcome of an axiom check. `witness_ids` is the minimal reproducer
/// (the violating basis pair/triple). Pairs whose comparison would leave
/// the window are skipped and counted, never reported as failures.
struct CheckReport {
    std::string name;
    bool pass = true;
    std::uint64_t checked = 0;
    std::uint64_t skipped_window = 0;
    std::string failure;
    std::vector<std::string> witness_ids;

    void fail(std::string msg, std::vector<std::string> ids) {
        pass = false;
        failure = std::move(msg);
        witness_ids = std::move(ids);
    }
};

/// Associativity on in-window triples, and Delta(ab) = Delta(a)Delta(b)
/// on in-window pairs; connectedness and the unit hold by construction
/// and are recorded as checked. Stops at the first counterexample.
template <class F>
CheckReport check_bialgebra(const BialgebraInstance<F>& inst) {
    CheckReport r;
    r.name = "bialgebra";
    const auto& basis = inst.module().basis();
    std::vector<std::uint32_t> pos;
    for (std::uint32_t i = 0; i < basis.size(); ++i)
        if (basis[i].degree > 0)
            pos.push_back(i);
    ++r.checked;  // V_0 = F*1 and the two-sided unit, enforced structurally

    for (std::uint32_t i : pos) {
        for (std::uint32_t j : pos) {
            if (!inst.pair_in_window(i, j)) {
                ++r.skipped_window;
                continue;
            }
            for (std::uint32_t k : pos) {
                Element<F> lhs, rhs;
                try {
                    lhs = multiply(inst, inst.basis_product(i, j), inst.module().basis_vector(k));
                    rhs = multiply(inst, inst.module().basis_vector(i), inst.basis_product(j, k));
                } catch (const OutOfWindow&) {
                    ++r.skipped_window;
                    continue;
                }
                ++r.checked;
                if (!(lhs == rhs)) {
                    r.fail("product not associative", {basis[i].id, basis[j].id, basis[k].id});
                    return r;
                }
            }
        }
    }

    for (std::uint32_t i : pos) {
        for (std::uint32_t j : pos) {
            if (!inst.pair_in_window(i, j)) {
                ++r.skipped_window;
                continue;
            }
            TensorElement<F> lhs = coproduct(inst, inst.basis_product(i, j));
            TensorElement<F> rhs;
            try {
                rhs = tensor_multiply(inst, inst.basis_coproduct(i), inst.basis_coproduct(j));
            } catch (const OutOfWindow&) {
                ++r.skipped_window;
                continue;
            }
            ++r.checked;
            if (!(lhs == rhs)) {
                r.fail("coproduct is not an algebra map", {basis[i].id, basis[j].id});
                return r;
            }
        }
    }
    return r;
}

/// Every positive-degree basis element b must have
/// Delta(b) = 1 (x) b + b (x) 1 + (terms with both factors of positive degree).
template <class F>
CheckReport check_hopf_shape(const BialgebraInstance<F>& inst) {
    CheckReport r;
    r.name = "hopf-shape";
    const F& f = inst.field();
    const auto& basis = inst.module().basis();
    for (std::uint32_t i = 0; i < basis.size(); ++i) {
        if (basis[i].degree == 0)
            continue;
        const TensorElement<F>& d = inst.basis_coproduct(i);
        bool left_unit = false, right_unit = false;
        for (const auto& [lr, c] : d.terms) {
            bool l0 = basis[lr.first].degree == 0;
            bool r0 = basis[lr.second].degree == 0;
            if (!l0 && !r0)
                continue;
            bool good_unit_term =
                (l0 != r0) && (l0 ? lr.second == i : lr.first == i) && c == f.one();
            if (!good_unit_term) {
                r.fail("coproduct term with a degree-0 factor is not the unit term",
                       {basis[i].id, basis[lr.first].id, basis[lr.second].id});
                return r;
            }
            (l0 ? left_unit : right_unit) = true;
        }
        if (!left_unit || !right_unit) {
            r.fail("coproduct is missing 1(x)v or v(x)1", {basis[i].id});
            return r;
        }
        ++r.checked;
    }
    return r;
}

/// Product half of the filtration axioms: |vw| <= |v| + |w| on all defined
/// in-window basis pairs. The action half lives with the group-action module.
template <class F>
CheckReport check_spicy_products(const BialgebraInstance<F>& inst) {
    CheckReport r;
    r.name = "spicy-product";
    const auto& basis = inst.module().basis();
    for (const auto& [ij, e] : inst.product_table()) {
        Rat lhs = inst.module().value_of(e);
        Rat rhs = basis[ij.first].value + basis[ij.second].value;
        ++r.checked;
        if (lhs > rhs) {
            r.fail("|vw| = " + to_string(lhs) + " exceeds |v|+|w| = " + to_string(rhs),
                   {basis[ij.first].id, basis[ij.second].id});
            return r;
        }
    }
    return r;
}

struct PbwBlock {
    std::uint32_t size = 0;           // |I|
    std::uint64_t expected = 0;       // C(Nmax, |I|)
    std::uint32_t rank = 0;
    bool pass = false;
};

struct PbwReport {
    bool pass = true;
    std::uint32_t nmax = 0;
    std::uint32_t degree = 0;
    std::vector<PbwBlock> blocks;
    std::uint64_t total_rank = 0;
    std::string failure;
};

inline std::uint64_t binomial_u64(std::uint32_t n, std::uint32_t k) {
    if (n > 60)
        throw Error(Diag::precondition, "binomial overflow guard: n > 60");
    if (k > n)
        return 0;
    std::uint64_t out = 1;
    for (std::uint32_t i = 1; i <= k; ++i)
        out = out * (n - k + i) / i;
    return out;
}

/// Quantum PBW certificate: for independent primitives v_1..v_Nmax of equal
/// positive degree m, every degree block of the 2^Nmax products v_I has full
/// rank C(Nmax, |I|). Preconditions are verified, with distinct error kinds.
template <class F>
PbwReport pbw_independence_check(const BialgebraInstance<F>& inst,
                                 const std::vector<Element<F>>& primitives, std::uint32_t nmax) {
    const F& f = inst.field();
    const ModuleWindow<F>& mod = inst.module();
    if (nmax > primitives.size())
        throw Error(Diag::precondition, "nmax exceeds the number of supplied vectors");
    if (nmax > 62)
        throw Error(Diag::precondition, "nmax > 62 is not supported");

    PbwReport rep;
    rep.nmax = nmax;

    std::uint32_t m = 0;
    for (std::uint32_t i = 0; i < nmax; ++i) {
        auto d = mod.degree_of(primitives[i]);
        if (!d || *d == 0)
            throw Error(Diag::not_homogeneous,
                        "v_" + std::to_string(i + 1) + " is not homogeneous of positive degree");
        if (i == 0)
            m = *d;
        else if (*d != m)
            throw Error(Diag::mixed_degree, "v_" + std::to_string(i + 1) + " has degree " +
                                                std::to_string(*d) + ", others have " +
                                                std::to_string(m));
    }
    rep.degree = m;
    for (std::uint32_t i = 0; i < nmax; ++i)
        if (!is_primitive(inst, primitives[i]))
            throw Error(Diag::not_primitive, "v_" + std::to_string(i + 1) + " is not primitive");
    {
        SpanBasis<F> span(f, static_cast<std::uint32_t>(mod.slice(m).size()));
        for (std::uint32_t i = 0; i < nmax; ++i)
            if (!span.insert(mod.coords(primitives[i], m)))
                throw Error(Diag::not_independent,
                            "v_" + std::to_string(i + 1) + " depends on its predecessors");
    }

    std::vector<Element<F>> firstn(primitives.begin(), primitives.begin() + nmax);
    std::vector<std::vector<Element<F>>> by_size(nmax + 1);
    for (std::uint64_t mask = 0; mask < (1ull << nmax); ++mask) {
        std::vector<std::uint32_t> I;
        for (std::uint32_t t = 0; t < nmax; ++t)
            if (mask & (1ull << t))
                I.push_back(t + 1);
        by_size[I.size()].push_back(product_vI(inst, firstn, I));
    }

    rep.blocks.resize(nmax + 1);
    parallel_for_index(nmax + 1, [&](std::size_t l) {
        PbwBlock& blk = rep.blocks[l];
        blk.size = static_cast<std::uint32_t>(l);
        blk.expected = binomial_u64(nmax, static_cast<std::uint32_t>(l));
        std::uint32_t deg = static_cast<std::uint32_t>(l) * m;
        SpanBasis<F> span(f, static_cast<std::uint32_t>(mod.slice(deg).size()));
        for (const Element<F>& v : by_size[l])
            span.insert(mod.coords(v, deg));
        blk.rank = static_cast<std::uint32_t>(span.size());
        blk.pass = blk.rank == blk.expected;
    });

    for (const PbwBlock& blk : rep.blocks) {
        rep.total_rank += blk.rank;
        if (!blk.pass && rep.pass) {
            rep.pass = false;
            rep.failure = "degree block |I| = " + std::to_string(blk.size) + " has rank " +
                          std::to_string(blk.rank) + ", expected " + std::to_string(blk.expected);
        }
    }
    return rep;
}

}  // namespace spicy
