#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spicy/checks.hpp"
#include "spicy/hopf.hpp"
#include "spicy/parallel.hpp"

namespace spicy {

/// Freely reduced word in the action generators; letters carry exponent +-1.
class GroupWord {
  public:
    using Letter = std::pair<std::string, int>;

    GroupWord() = default;

    static GroupWord identity() { return {}; }

    static GroupWord letter(const std::string& gen, int exp) {
        GroupWord w;
        w.append(gen, exp);
        return w;
    }

    static GroupWord power(const std::string& gen, int n) {
        GroupWord w;
        for (int i = 0; i < std::abs(n); ++i)
            w.append(gen, n < 0 ? -1 : 1);
        return w;
    }

    void append(const std::string& gen, int exp) {
        if (exp != 1 && exp != -1)
            throw Error(Diag::precondition, "letter exponent must be +-1");
        if (!letters_.empty() && letters_.back().first == gen &&
            letters_.back().second == -exp) {
            letters_.pop_back();  // free reduction
            return;
        }
        letters_.emplace_back(gen, exp);
    }

    GroupWord concat(const GroupWord& o) const {
        GroupWord w = *this;
        for (const auto& [g, e] : o.letters_)
            w.append(g, e);
        return w;
    }

    GroupWord inverse() const {
        GroupWord w;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.emplace_back(it->first, -it->second);
        return w;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }

    std::string str() const {
        if (letters_.empty())
            return "e";
        std::string out;
        std::size_t i = 0;
        while (i < letters_.size()) {
            std::size_t j = i;
            while (j < letters_.size() && letters_[j] == letters_[i])
                ++j;
            int exp = letters_[i].second * static_cast<int>(j - i);
            if (!out.empty())
                out += "*";
            out += letters_[i].first;
            if (exp != 1)
                out += "^" + std::to_string(exp);
            i = j;
        }
        return out;
    }

    /// Parses "t", "t^3", "t^-2*s", "e". Whitespace-free names.
    static GroupWord parse(const std::string& s) {
        GroupWord w;
        if (s.empty() || s == "e")
            return w;
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t star = s.find('*', i);
            std::string piece = s.substr(i, star == std::string::npos ? star : star - i);
            std::size_t caret = piece.find('^');
            std::string gen = piece.substr(0, caret);
            int exp = 1;
            if (caret != std::string::npos) {
                try {
                    std::size_t used = 0;
                    exp = std::stoi(piece.substr(caret + 1), &used);
                    if (used != piece.size() - caret - 1)
                        throw std::invalid_argument("");
                } catch (...) {
                    throw SchemaError("bad word exponent in '" + piece + "'");
                }
            }
            if (gen.empty())
                throw SchemaError("bad group word '" + s + "'");
            for (int k = 0; k < std::abs(exp); ++k)
                w.append(gen, exp < 0 ? -1 : 1);
            i = star == std::string::npos ? s.size() : star + 1;
        }
        return w;
    }

    auto operator<=>(const GroupWord&) const = default;

  private:
    std::vector<Letter> letters_;
};

/// Weighted word length of the reduced spelling. Symmetry and
/// subadditivity hold by construction.
class LengthFunction {
  public:
    LengthFunction() = default;

    void set_weight(const std::string& gen, Rat w) {
        w.canonicalize();
        if (w <= 0)
            throw SchemaError("generator weight must be positive");
        weights_[gen] = std::move(w);
    }

    const std::map<std::string, Rat>& weights() const { return weights_; }

    Rat length(const GroupWord& w) const {
        Rat total(0);
        for (const auto& [gen, exp] : w.letters())
            total += weight(gen);
        return total;
    }

    Rat weight(const std::string& gen) const {
        auto it = weights_.find(gen);
        if (it == weights_.end())
            throw SchemaError("no length weight for generator '" + gen + "'");
        return it->second;
    }

  private:
    std::map<std::string, Rat> weights_;
};

/// xi = sum of coefficients times group elements; its value is the largest
/// weighted length over the support (0 for the zero element).
template <class F>
struct GroupRingElement {
    std::map<GroupWord, typename F::Element> terms;
};

template <class F>
Rat group_ring_value(const GroupRingElement<F>& xi, const LengthFunction& len) {
    Rat v(0);
    for (const auto& [w, c] : xi.terms) {
        Rat l = len.length(w);
        if (l > v)
            v = l;
    }
    return v;
}

/// Invertible degree-preserving operators for each generator, given by
/// images of basis vectors. Partial: a missing image means the vector is
/// carried outside the window by that generator.
template <class F>
class GroupActionWindow {
  public:
    struct Operator {
        std::map<std::uint32_t, Element<F>> image;
        std::map<std::uint32_t, Element<F>> inverse_image;
    };

    GroupActionWindow(const ModuleWindow<F>& mod, std::map<std::string, Operator> ops,
                      LengthFunction length)
        : ops_(std::move(ops)), length_(std::move(length)) {
        for (const auto& [gen, op] : ops_) {
            length_.weight(gen);  // weight must exist
            validate_side(mod, gen, op.image);
            validate_side(mod, gen, op.inverse_image);
            check_inverse(mod, gen, op.image, op.inverse_image);
            check_inverse(mod, gen, op.inverse_image, op.image);
        }
    }

    const std::map<std::string, Operator>& operators() const { return ops_; }
    const LengthFunction& length() const { return length_; }

    std::vector<std::string> generator_names() const {
        std::vector<std::string> out;
        for (const auto& [g, op] : ops_)
            out.push_back(g);
        return out;
    }

    /// Image of a basis vector under one letter, if still in window.
    const Element<F>* letter_image(const std::string& gen, int exp, std::uint32_t idx) const {
        auto oit = ops_.find(gen);
        if (oit == ops_.end())
            throw SchemaError("unknown action generator '" + gen + "'");
        const auto& table = exp > 0 ? oit->second.image : oit->second.inverse_image;
        auto it = table.find(idx);
        return it == table.end() ? nullptr : &it->second;
    }

  private:
    static void validate_side(const ModuleWindow<F>& mod, const std::string& gen,
                              const std::map<std::uint32_t, Element<F>>& table) {
        for (const auto& [idx, img] : table) {
            if (idx >= mod.dim())
                throw SchemaError("operator '" + gen + "' references unknown basis index");
            auto d = mod.degree_of(img);
            if (!d || *d != mod.basis()[idx].degree)
                throw SchemaError("operator '" + gen + "' does not preserve degree on '" +
                                  mod.basis()[idx].id + "'");
        }
    }

    // op then inv must fix every basis vector whose round trip stays in window
    static void check_inverse(const ModuleWindow<F>& mod, const std::string& gen,
                              const std::map<std::uint32_t, Element<F>>& fwd,
                              const std::map<std::uint32_t, Element<F>>& bwd) {
        const F& f = mod.field();
        for (const auto& [idx, img] : fwd) {
            Element<F> back;
            bool defined = true;
            for (const auto& [t, c] : img.terms) {
                auto it = bwd.find(t);
                if (it == bwd.end()) {
                    defined = false;
                    break;
                }
                accumulate(f, back, it->second, c);
            }
            if (defined && !(back == mod.basis_vector(idx)))
                throw SchemaError("operator '" + gen + "' and its inverse do not compose to the "
                                  "identity on '" + mod.basis()[idx].id + "'");
        }
    }

    std::map<std::string, Operator> ops_;
    LengthFunction length_;
};

/// Applies the word's letters to v left to right. Escaping the window is an
/// error naming the first letter (in application order) that fails.
template <class F>
Element<F> act(const ModuleWindow<F>& mod, const GroupActionWindow<F>& action, const GroupWord& w,
               const Element<F>& v) {
    const F& f = mod.field();
    Element<F> cur = v;
    for (const auto& [gen, exp] : w.letters()) {
        Element<F> next;
        for (const auto& [idx, c] : cur.terms) {
            const Element<F>* img = action.letter_image(gen, exp, idx);
            if (!img)
                throw OutOfWindow("letter " + gen + (exp < 0 ? "^-1" : "") +
                                  " carries '" + mod.basis()[idx].id + "' out of the window");
            accumulate(f, next, *img, c);
        }
        cur = std::move(next);
    }
    return cur;
}

/// Orbit probe along powers of one group element.
struct OrbitProbe {
    std::optional<std::uint32_t> d;     // first n with g^n v dependent; nullopt = independent
    std::vector<std::uint32_t> ranks;   // rank after inserting g^0 v, g^1 v, ...
};

/// Inserts g^0 v, g^1 v, ... into a span until the first dependent power or
/// the bound. d = dim W_v^g when finite (the orbit satisfies a linear
/// recurrence of that length from then on).
template <class F>
OrbitProbe orbit_dim(const ModuleWindow<F>& mod, const GroupActionWindow<F>& action,
                     const Element<F>& v, const GroupWord& g, std::uint32_t bound) {
    if (v.is_zero())
        throw Error(Diag::zero_vector, "orbit_dim needs v != 0");
    const F& f = mod.field();
    SpanBasis<F> span(f, mod.dim());
    OrbitProbe probe;
    Element<F> cur = v;
    for (std::uint32_t n = 0;; ++n) {
        Vec<F> coords(mod.dim(), f.zero());
        for (const auto& [i, c] : cur.terms)
            coords[i] = c;
        if (!span.insert(coords)) {
            probe.d = n;
            return probe;
        }
        probe.ranks.push_back(static_cast<std::uint32_t>(span.size()));
        if (n == bound)
            return probe;
        cur = act(mod, action, g, cur);
    }
}

struct SpanClosure {
    std::vector<std::uint32_t> ranks;  // rank after each completed depth
    std::uint32_t dim = 0;
    bool closed = false;  // true when the span became invariant before the bound
};

/// Breadth-first closure of {v} under the listed words and their inverses,
/// up to the given word-length depth. Deterministic: at each depth the
/// frontier is processed in insertion order, generators in list order,
/// each followed by its inverse.
template <class F>
SpanClosure orbit_span_subgroup(const ModuleWindow<F>& mod, const GroupActionWindow<F>& action,
                                const Element<F>& v, const std::vector<GroupWord>& gens,
                                std::uint32_t bound) {
    const F& f = mod.field();
    SpanBasis<F> span(f, mod.dim());
    SpanClosure out;
    auto insert_elt = [&](const Element<F>& e) {
        Vec<F> coords(mod.dim(), f.zero());
        for (const auto& [i, c] : e.terms)
            coords[i] = c;
        return span.insert(coords);
    };
    std::vector<Element<F>> frontier;
    if (insert_elt(v))
        frontier.push_back(v);
    out.ranks.push_back(static_cast<std::uint32_t>(span.size()));
    for (std::uint32_t depth = 1; depth <= bound && !frontier.empty(); ++depth) {
        std::vector<Element<F>> next;
        for (const Element<F>& e : frontier) {
            for (const GroupWord& g : gens) {
                for (const GroupWord& w : {g, g.inverse()}) {
                    Element<F> img = act(mod, action, w, e);
                    if (insert_elt(img))
                        next.push_back(std::move(img));
                }
            }
        }
        out.ranks.push_back(static_cast<std::uint32_t>(span.size()));
        frontier = std::move(next);
    }
    out.closed = frontier.empty();
    out.dim = static_cast<std::uint32_t>(span.size());
    return out;
}

enum class ProbeOutcome { finite, independent, window_exhausted };

struct CandidateResult {
    std::size_t v_index = 0;
    std::size_t g_index = 0;
    ProbeOutcome outcome = ProbeOutcome::finite;
    std::optional<std::uint32_t> d;
};

template <class F>
struct HealthyWitness {
    Element<F> v;
    GroupWord g;
    std::size_t v_index = 0;
    std::size_t g_index = 0;
    std::vector<std::uint32_t> ranks;
};

/// Search verdict. Sickness is only ever certified up to the probed window:
/// SickUpToWindow says every candidate orbit collapsed (or escaped) within
/// the bound, nothing more.
template <class F>
struct OrbitVerdict {
    enum class Kind { healthy_witness, sick_up_to_window, window_exhausted };
    Kind kind = Kind::sick_up_to_window;
    std::optional<HealthyWitness<F>> witness;
    std::vector<CandidateResult> outcomes;
};

/// Scans the candidate grid (v-major, then g) with orbit_dim and returns the
/// first witness whose orbit stays independent up to the bound. Probes run
/// on the worker pool; the scan order of the report stays deterministic.
template <class F>
OrbitVerdict<F> find_healthy(const ModuleWindow<F>& mod, const GroupActionWindow<F>& action,
                             const std::vector<Element<F>>& candidates_v,
                             const std::vector<GroupWord>& candidates_g, std::uint32_t bound) {
    OrbitVerdict<F> verdict;
    const std::size_t total = candidates_v.size() * candidates_g.size();
    std::vector<CandidateResult> results(total);
    std::vector<std::vector<std::uint32_t>> rank_seqs(total);
    parallel_for_index(total, [&](std::size_t idx) {
        std::size_t vi = idx / candidates_g.size();
        std::size_t gi = idx % candidates_g.size();
        CandidateResult& res = results[idx];
        res.v_index = vi;
        res.g_index = gi;
        if (candidates_v[vi].is_zero()) {  // always sick; spans {0}
            res.outcome = ProbeOutcome::finite;
            res.d = 0;
            return;
        }
        try {
            OrbitProbe probe = orbit_dim(mod, action, candidates_v[vi], candidates_g[gi], bound);
            if (probe.d) {
                res.outcome = ProbeOutcome::finite;
                res.d = probe.d;
            } else {
                res.outcome = ProbeOutcome::independent;
                rank_seqs[idx] = std::move(probe.ranks);
            }
        } catch (const OutOfWindow&) {
            res.outcome = ProbeOutcome::window_exhausted;
        }
    });
    verdict.outcomes = results;
    bool any_conclusive = false;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (results[idx].outcome == ProbeOutcome::independent) {
            verdict.kind = OrbitVerdict<F>::Kind::healthy_witness;
            verdict.witness = HealthyWitness<F>{candidates_v[results[idx].v_index],
                                                candidates_g[results[idx].g_index],
                                                results[idx].v_index, results[idx].g_index,
                                                std::move(rank_seqs[idx])};
            return verdict;
        }
        if (results[idx].outcome == ProbeOutcome::finite)
            any_conclusive = true;
    }
    verdict.kind = (total > 0 && !any_conclusive) ? OrbitVerdict<F>::Kind::window_exhausted
                                                  : OrbitVerdict<F>::Kind::sick_up_to_window;
    return verdict;
}

struct Prep2Report {
    std::uint32_t d = 0;        // d_v(g)
    std::uint32_t dim_wh = 0;   // dim W_v^H
    std::uint32_t dim_whg = 0;  // dim W_v^<H,g>
    bool pass = false;          // dim_whg <= d * dim_wh
};

/// Checks dim W_v^<H,g> <= d_v(g) * dim W_v^H for a (v, g) that is sick
/// within the bound.
template <class F>
Prep2Report check_prep2_bound(const ModuleWindow<F>& mod, const GroupActionWindow<F>& action,
                              const Element<F>& v, const GroupWord& g,
                              const std::vector<GroupWord>& H, std::uint32_t bound) {
    OrbitProbe probe = orbit_dim(mod, action, v, g, bound);
    if (!probe.d)
        throw Error(Diag::precondition,
                    "v is not sick for g within bound " + std::to_string(bound));
    Prep2Report rep;
    rep.d = *probe.d;
    rep.dim_wh = orbit_span_subgroup(mod, action, v, H, bound).dim;
    std::vector<GroupWord> hg = H;
    hg.push_back(g);
    rep.dim_whg = orbit_span_subgroup(mod, action, v, hg, bound).dim;
    rep.pass = rep.dim_whg <= rep.d * rep.dim_wh;
    return rep;
}

/// Action half of the filtration axioms: |g b| <= |g| + |b| and
/// |g^-1 b| <= |g| + |b| on every defined image.
template <class F>
CheckReport check_spicy_action(const ModuleWindow<F>& mod, const GroupActionWindow<F>& action) {
    CheckReport r;
    r.name = "spicy-action";
    for (const auto& [gen, op] : action.operators()) {
        Rat lg = action.length().weight(gen);
        for (const auto* side : {&op.image, &op.inverse_image}) {
            for (const auto& [idx, img] : *side) {
                Rat lhs = mod.value_of(img);
                Rat rhs = lg + mod.basis()[idx].value;
                ++r.checked;
                if (lhs > rhs) {
                    r.fail("|g v| = " + to_string(lhs) + " exceeds |g|+|v| = " + to_string(rhs),
                           {gen + (side == &op.inverse_image ? "^-1" : ""), mod.basis()[idx].id});
                    return r;
                }
            }
        }
    }
    return r;
}

/// Both spicy inequalities for an instance with an action attached.
template <class F>
std::vector<CheckReport> check_spicy(const BialgebraInstance<F>& inst,
                                     const GroupActionWindow<F>& action) {
    return {check_spicy_products(inst), check_spicy_action(inst.module(), action)};
}

}  // namespace spicy
