#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spicy/group_action.hpp"
#include "spicy/hopf.hpp"

namespace spicy {

struct GeneratorSpec {
    std::string id;
    std::uint32_t degree = 1;
    Rat value;
};

template <class F>
struct ModelBundle {
    BialgebraInstance<F> instance;
    GroupActionWindow<F> action;
    std::vector<std::string> generator_ids;
};

namespace detail {

// monomial = exponent vector over the generator list; odd-degree
// generators are square-free
struct Monomial {
    std::vector<std::uint32_t> exp;
    std::uint32_t degree = 0;
    Rat value;
    std::string id;
};

inline std::string monomial_id(const std::vector<GeneratorSpec>& gens,
                               const std::vector<std::uint32_t>& exp) {
    std::string out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!exp[i])
            continue;
        if (!out.empty())
            out += "*";
        out += gens[i].id;
        if (exp[i] > 1)
            out += "^" + std::to_string(exp[i]);
    }
    return out.empty() ? "1" : out;
}

// parity of the Koszul sign for interleaving f into e (both in generator order)
inline bool product_sign_odd(const std::vector<GeneratorSpec>& gens,
                             const std::vector<std::uint32_t>& e,
                             const std::vector<std::uint32_t>& f) {
    std::uint64_t swaps = 0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!(gens[i].degree & 1u) || !f[i])
            continue;
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if ((gens[j].degree & 1u) && e[j])
                swaps += static_cast<std::uint64_t>(f[i]) * e[j];
    }
    return swaps & 1u;
}

}  // namespace detail

/// Free graded-commutative bialgebra window on the given generators:
/// monomial basis (square-free in the odd-degree generators), Koszul-signed
/// products, coproduct generated by Delta(x) = 1(x)x + x(x)1. Degrees and
/// values of monomials are additive in the generators.
template <class F>
BialgebraInstance<F> build_free_model(const F& field, const std::vector<GeneratorSpec>& gens,
                                      const WindowLimits& window) {
    for (const auto& g : gens) {
        if (g.degree == 0)
            throw Error(Diag::precondition, "generator '" + g.id + "' must have positive degree");
        if (g.degree > window.max_degree || g.value > window.max_value)
            throw Error(Diag::precondition,
                        "window too small: it must contain generator '" + g.id +
                            "' (need max_degree >= " + std::to_string(g.degree) +
                            ", max_value >= " + to_string(g.value) + ")");
    }

    std::vector<detail::Monomial> monos;
    std::vector<std::uint32_t> exp(gens.size(), 0);
    auto dfs = [&](auto&& self, std::size_t i, std::uint32_t deg, Rat val) -> void {
        if (i == gens.size()) {
            monos.push_back({exp, deg, val, detail::monomial_id(gens, exp)});
            return;
        }
        std::uint32_t cap = (gens[i].degree & 1u) ? 1u : window.max_degree;
        for (std::uint32_t e = 0;; ++e) {
            std::uint32_t d = deg + e * gens[i].degree;
            Rat v = val + Rat(static_cast<long>(e)) * gens[i].value;
            if (d > window.max_degree || v > window.max_value || e > cap)
                break;
            exp[i] = e;
            self(self, i + 1, d, v);
        }
        exp[i] = 0;
    };
    dfs(dfs, 0, 0, Rat(0));

    std::sort(monos.begin(), monos.end(), [](const auto& a, const auto& b) {
        if (a.degree != b.degree)
            return a.degree < b.degree;
        if (a.value != b.value)
            return a.value < b.value;
        return a.exp < b.exp;
    });

    std::vector<BasisElement> basis;
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    for (std::uint32_t i = 0; i < monos.size(); ++i) {
        basis.push_back({monos[i].id, monos[i].degree, monos[i].value});
        index.emplace(monos[i].exp, i);
    }
    ModuleWindow<F> module(field, basis, window);

    typename BialgebraInstance<F>::ProductTable product;
    for (std::uint32_t i = 0; i < monos.size(); ++i) {
        if (monos[i].degree == 0)
            continue;
        for (std::uint32_t j = 0; j < monos.size(); ++j) {
            if (monos[j].degree == 0)
                continue;
            if (monos[i].degree + monos[j].degree > window.max_degree ||
                monos[i].value + monos[j].value > window.max_value)
                continue;
            std::vector<std::uint32_t> prod(gens.size());
            bool zero = false;
            for (std::size_t t = 0; t < gens.size(); ++t) {
                prod[t] = monos[i].exp[t] + monos[j].exp[t];
                if ((gens[t].degree & 1u) && prod[t] > 1)
                    zero = true;
            }
            if (zero)
                continue;
            typename F::Element c =
                detail::product_sign_odd(gens, monos[i].exp, monos[j].exp)
                    ? field.neg(field.one())
                    : field.one();
            Element<F> e;
            add_term(field, e, index.at(prod), c);
            product.emplace(std::make_pair(i, j), std::move(e));
        }
    }

    // coproducts in degree order, each monomial from its predecessor:
    // Delta(M * x) = Delta(M) * (1(x)x + x(x)1), expanded with Koszul signs
    typename BialgebraInstance<F>::CoproductTable coproduct;
    std::map<std::uint32_t, TensorElement<F>> delta;  // by basis index, incl. unit
    for (std::uint32_t bi = 0; bi < monos.size(); ++bi) {
        const auto& mono = monos[bi];
        if (mono.degree == 0) {
            TensorElement<F> unit;
            add_term(field, unit, bi, bi, field.one());
            delta.emplace(bi, std::move(unit));
            continue;
        }
        std::size_t last = gens.size();
        for (std::size_t t = gens.size(); t-- > 0;)
            if (mono.exp[t]) {
                last = t;
                break;
            }
        std::vector<std::uint32_t> prev = mono.exp;
        prev[last] -= 1;
        const TensorElement<F>& base = delta.at(index.at(prev));
        bool gen_odd = gens[last].degree & 1u;
        // tensor factors of delta(prev) are sub-monomials of prev, so the
        // appended generator always lands at the end of either factor and
        // the only Koszul sign is deg(b)*deg(x) in the second term
        TensorElement<F> out;
        for (const auto& [ab, c] : base.terms) {
            const auto& ea = monos[ab.first].exp;
            const auto& eb = monos[ab.second].exp;
            // (a (x) b)(1 (x) x) = a (x) bx
            std::vector<std::uint32_t> bx = eb;
            bx[last] += 1;
            if (!(gen_odd && bx[last] > 1))
                add_term(field, out, ab.first, index.at(bx), c);
            // (a (x) b)(x (x) 1) = (-1)^(deg b * deg x) ax (x) b
            std::vector<std::uint32_t> ax = ea;
            ax[last] += 1;
            if (!(gen_odd && ax[last] > 1)) {
                typename F::Element s = c;
                if (gen_odd && (monos[ab.second].degree & 1u))
                    s = field.neg(s);
                add_term(field, out, index.at(ax), ab.second, s);
            }
        }
        delta.emplace(bi, out);
        coproduct.emplace(bi, std::move(out));
    }

    return BialgebraInstance<F>(std::move(module), std::move(product), std::move(coproduct));
}

struct ShiftModelSpec {
    std::uint32_t n_generators = 0;
    std::uint32_t m = 1;   // common generator degree
    Rat c = Rat(1);        // value slope, |x_i| = c*i
    Rat lambda = Rat(1);   // length of the shift generator
    WindowLimits window;
};

namespace detail {

template <class F>
ModelBundle<F> build_shift_model(const F& field, const ShiftModelSpec& spec) {
    if (spec.n_generators == 0)
        throw Error(Diag::precondition, "need at least one generator");
    Rat c = spec.c, lambda = spec.lambda;
    c.canonicalize();
    lambda.canonicalize();
    if (c <= 0 || lambda <= 0)
        throw Error(Diag::precondition, "c and lambda must be positive");
    if (c > lambda)
        throw Error(Diag::precondition,
                    "c <= lambda required, otherwise the shift is not spicy");

    std::vector<GeneratorSpec> gens;
    for (std::uint32_t i = 1; i <= spec.n_generators; ++i)
        gens.push_back({"x" + std::to_string(i), spec.m, c * Rat(static_cast<long>(i))});
    BialgebraInstance<F> inst = build_free_model(field, gens, spec.window);
    const ModuleWindow<F>& mod = inst.module();

    // the shift is supplied on the unit and the generator slice; longer
    // monomials would move by more than |t| and are left out of its domain
    typename GroupActionWindow<F>::Operator op;
    std::uint32_t unit = mod.index_of("1");
    op.image.emplace(unit, mod.basis_vector(unit));
    op.inverse_image.emplace(unit, mod.basis_vector(unit));
    for (std::uint32_t i = 1; i <= spec.n_generators; ++i) {
        auto cur = mod.find("x" + std::to_string(i));
        if (!cur)
            continue;
        if (auto up = mod.find("x" + std::to_string(i + 1)))
            op.image.emplace(*cur, mod.basis_vector(*up));
        if (i > 1)
            if (auto down = mod.find("x" + std::to_string(i - 1)))
                op.inverse_image.emplace(*cur, mod.basis_vector(*down));
    }
    LengthFunction len;
    len.set_weight("t", lambda);
    GroupActionWindow<F> action(mod, {{"t", std::move(op)}}, std::move(len));

    std::vector<std::string> ids;
    for (std::uint32_t i = 1; i <= spec.n_generators; ++i)
        ids.push_back("x" + std::to_string(i));
    return ModelBundle<F>{std::move(inst), std::move(action), std::move(ids)};
}

}  // namespace detail

/// Exterior shift model: generators x_1..x_N of odd degree m (default 1),
/// |x_i| = c*i, Z-action x_i -> x_{i+1} with |t| = lambda.
template <class F>
ModelBundle<F> build_exterior_model(const F& field, const ShiftModelSpec& spec) {
    if (!(spec.m & 1u))
        throw Error(Diag::precondition, "exterior model needs odd generator degree");
    return detail::build_shift_model(field, spec);
}

/// Polynomial shift model: the same on generators of even degree m.
template <class F>
ModelBundle<F> build_polynomial_model(const F& field, const ShiftModelSpec& spec) {
    if (spec.m & 1u)
        throw Error(Diag::precondition, "polynomial model needs even generator degree");
    return detail::build_shift_model(field, spec);
}

/// Integer-lattice bookkeeping for the telescope: orbit elements are powers
/// 2^i, and the subgroup they generate inside the 2-adic rationals is
/// (2^e) Z with e the smallest exponent seen.
class TelescopeState {
  public:
    void add_orbit_exponent(long i) { e_ = e_ ? std::min(*e_, i) : std::optional<long>(i); }
    std::optional<long> exponent() const { return e_; }

  private:
    std::optional<long> e_;
};

/// Subgroup generator exponent for the orbit {t^i v : |i| <= k}: always -k.
inline long telescope_orbit_subgroup_generator(std::uint32_t k) {
    TelescopeState s;
    for (long i = -static_cast<long>(k); i <= static_cast<long>(k); ++i)
        s.add_orbit_exponent(i);
    return *s.exponent();
}

template <class F>
struct TelescopeBundle {
    ModuleWindow<F> module;
    GroupActionWindow<F> action;
    std::vector<std::string> generator_ids;
};

/// The degree-two mapping-torus module: one degree-1 line on which t acts
/// as multiplication by 2 (so every orbit span has dimension one), except
/// in characteristic 2 where the module vanishes.
template <class F>
TelescopeBundle<F> build_telescope_model(const F& field) {
    WindowLimits window{1, Rat(1)};
    bool char2 = false;
    if constexpr (is_prime_field_v<F>)
        char2 = field.modulus() == 2;

    std::vector<BasisElement> basis;
    if (!char2)
        basis.push_back({"v", 1, Rat(1)});
    ModuleWindow<F> module(field, basis, window);

    typename GroupActionWindow<F>::Operator op;
    if (!char2) {
        const typename F::Element two = field.from_int(2);
        Element<F> fwd, bwd;
        add_term(field, fwd, 0u, two);
        add_term(field, bwd, 0u, field.inv(two));
        op.image.emplace(0u, std::move(fwd));
        op.inverse_image.emplace(0u, std::move(bwd));
    }
    LengthFunction len;
    len.set_weight("t", Rat(1));
    GroupActionWindow<F> action(module, {{"t", std::move(op)}}, std::move(len));
    std::vector<std::string> ids;
    if (!char2)
        ids.push_back("v");
    return TelescopeBundle<F>{std::move(module), std::move(action), std::move(ids)};
}

template <class F>
struct ActionExample {
    ModuleWindow<F> module;
    GroupActionWindow<F> action;
};

/// Two-dimensional module with the coordinate swap g (and, when asked,
/// the reflection h = diag(1, -1)); the standard finite-orbit examples.
template <class F>
ActionExample<F> build_swap_example(const F& field, bool with_reflection = false) {
    WindowLimits window{1, Rat(1)};
    std::vector<BasisElement> basis{{"e1", 1, Rat(1)}, {"e2", 1, Rat(1)}};
    ModuleWindow<F> module(field, basis, window);

    std::map<std::string, typename GroupActionWindow<F>::Operator> ops;
    typename GroupActionWindow<F>::Operator swap;
    swap.image.emplace(0u, module.basis_vector(1));
    swap.image.emplace(1u, module.basis_vector(0));
    swap.inverse_image = swap.image;
    ops.emplace("g", std::move(swap));

    LengthFunction len;
    len.set_weight("g", Rat(1));
    if (with_reflection) {
        typename GroupActionWindow<F>::Operator refl;
        Element<F> minus_e2;
        add_term(field, minus_e2, 1u, field.neg(field.one()));
        refl.image.emplace(0u, module.basis_vector(0));
        refl.image.emplace(1u, minus_e2);
        refl.inverse_image = refl.image;
        ops.emplace("h", std::move(refl));
        len.set_weight("h", Rat(1));
    }
    GroupActionWindow<F> action(module, std::move(ops), std::move(len));
    return ActionExample<F>{std::move(module), std::move(action)};
}

}  // namespace spicy
