#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spicy/error.hpp"
#include "spicy/field.hpp"
#include "spicy/linalg.hpp"
#include "spicy/rational.hpp"

namespace spicy {

/// One basis vector of a window: grading degree and filtration value.
/// Degree and value are unrelated; the value is a nonnegative rational.
struct BasisElement {
    std::string id;
    std::uint32_t degree = 0;
    Rat value;
};

struct WindowLimits {
    std::uint32_t max_degree = 0;
    Rat max_value;
};

template <class F>
struct Element {
    std::map<std::uint32_t, typename F::Element> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Element&) const = default;
};

template <class F>
struct TensorElement {
    std::map<std::pair<std::uint32_t, std::uint32_t>, typename F::Element> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const TensorElement&) const = default;
};

template <class F>
void add_term(const F& f, Element<F>& e, std::uint32_t idx, const typename F::Element& c) {
    if (f.is_zero(c))
        return;
    auto [it, inserted] = e.terms.emplace(idx, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second))
            e.terms.erase(it);
    }
}

template <class F>
void add_term(const F& f, TensorElement<F>& e, std::uint32_t left, std::uint32_t right,
              const typename F::Element& c) {
    if (f.is_zero(c))
        return;
    auto [it, inserted] = e.terms.emplace(std::make_pair(left, right), c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second))
            e.terms.erase(it);
    }
}

template <class F>
Element<F> scaled(const F& f, const Element<F>& e, const typename F::Element& c) {
    Element<F> out;
    if (f.is_zero(c))
        return out;
    for (const auto& [i, x] : e.terms)
        out.terms.emplace(i, f.mul(c, x));
    return out;
}

template <class F>
void accumulate(const F& f, Element<F>& dst, const Element<F>& src,
                const typename F::Element& c) {
    for (const auto& [i, x] : src.terms)
        add_term(f, dst, i, f.mul(c, x));
}

template <class F>
void accumulate(const F& f, TensorElement<F>& dst, const TensorElement<F>& src,
                const typename F::Element& c) {
    for (const auto& [ij, x] : src.terms)
        add_term(f, dst, ij.first, ij.second, f.mul(c, x));
}

/// Finite (degree <= D, value <= R) truncation of a graded filtered module.
template <class F>
class ModuleWindow {
  public:
    ModuleWindow(F field, std::vector<BasisElement> basis, WindowLimits window)
        : field_(std::move(field)), basis_(std::move(basis)), window_(std::move(window)) {
        window_.max_value.canonicalize();
        for (std::uint32_t i = 0; i < basis_.size(); ++i) {
            BasisElement& b = basis_[i];
            if (b.id.empty())
                throw SchemaError("basis element with empty id");
            if (!index_.emplace(b.id, i).second)
                throw SchemaError("duplicate basis id '" + b.id + "'");
            b.value.canonicalize();
            if (b.value < 0)
                throw SchemaError("basis '" + b.id + "' has negative value");
            if (b.degree > window_.max_degree || b.value > window_.max_value)
                throw SchemaError("basis '" + b.id + "' lies outside the window");
            if (slices_.size() <= b.degree)
                slices_.resize(b.degree + 1);
            pos_in_slice_.push_back(static_cast<std::uint32_t>(slices_[b.degree].size()));
            slices_[b.degree].push_back(i);
        }
    }

    const F& field() const { return field_; }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const WindowLimits& window() const { return window_; }
    std::uint32_t dim() const { return static_cast<std::uint32_t>(basis_.size()); }

    std::optional<std::uint32_t> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::uint32_t index_of(const std::string& id) const {
        auto idx = find(id);
        if (!idx)
            throw SchemaError("unknown basis id '" + id + "'");
        return *idx;
    }

    const std::vector<std::uint32_t>& slice(std::uint32_t degree) const {
        static const std::vector<std::uint32_t> empty;
        return degree < slices_.size() ? slices_[degree] : empty;
    }

    std::uint32_t pos_in_slice(std::uint32_t idx) const { return pos_in_slice_[idx]; }

    Element<F> basis_vector(std::uint32_t idx) const {
        Element<F> e;
        e.terms.emplace(idx, field_.one());
        return e;
    }

    /// Filtration value: max over the support (sums cannot raise the value).
    Rat value_of(const Element<F>& e) const {
        Rat v(0);
        for (const auto& [i, c] : e.terms)
            if (basis_[i].value > v)
                v = basis_[i].value;
        return v;
    }

    /// Degree if e is homogeneous and nonzero.
    std::optional<std::uint32_t> degree_of(const Element<F>& e) const {
        if (e.terms.empty())
            return std::nullopt;
        std::uint32_t d = basis_[e.terms.begin()->first].degree;
        for (const auto& [i, c] : e.terms)
            if (basis_[i].degree != d)
                return std::nullopt;
        return d;
    }

    /// Coordinates in the given degree slice; rejects terms of other degrees.
    Vec<F> coords(const Element<F>& e, std::uint32_t degree) const {
        const auto& sl = slice(degree);
        Vec<F> out(sl.size(), field_.zero());
        for (const auto& [i, c] : e.terms) {
            if (basis_[i].degree != degree)
                throw Error(Diag::not_homogeneous,
                            "term '" + basis_[i].id + "' is not of degree " + std::to_string(degree));
            out[pos_in_slice_[i]] = c;
        }
        return out;
    }

    std::string describe(const Element<F>& e) const {
        if (e.terms.empty())
            return "0";
        std::string s;
        for (const auto& [i, c] : e.terms) {
            if (!s.empty())
                s += " + ";
            s += field_.str(c) + "*" + basis_[i].id;
        }
        return s;
    }

  private:
    F field_;
    std::vector<BasisElement> basis_;
    WindowLimits window_;
    std::map<std::string, std::uint32_t> index_;
    std::vector<std::vector<std::uint32_t>> slices_;
    std::vector<std::uint32_t> pos_in_slice_;
};

/// Window of a graded connected bialgebra: sparse product and coproduct
/// tables over a ModuleWindow. Tables cover positive-degree entries only;
/// products with 1 and the coproduct of 1 are definitional. A missing
/// product entry for an in-window pair means the product is zero; pairs
/// whose degree or value sum exceeds the window are out of window and
/// multiplying them is an explicit error.
template <class F>
class BialgebraInstance {
  public:
    using ProductTable = std::map<std::pair<std::uint32_t, std::uint32_t>, Element<F>>;
    using CoproductTable = std::map<std::uint32_t, TensorElement<F>>;

    BialgebraInstance(ModuleWindow<F> module, ProductTable product, CoproductTable coproduct)
        : module_(std::move(module)), product_(std::move(product)),
          coproduct_(std::move(coproduct)) {
        const auto& basis = module_.basis();
        std::optional<std::uint32_t> unit;
        for (std::uint32_t i = 0; i < basis.size(); ++i) {
            if (basis[i].degree == 0) {
                if (unit)
                    throw SchemaError("more than one degree-0 basis element");
                if (basis[i].id != "1" || basis[i].value != 0)
                    throw SchemaError("the degree-0 basis element must be \"1\" with value 0");
                unit = i;
            }
        }
        if (!unit)
            throw SchemaError("no degree-0 basis element \"1\"");
        unit_ = *unit;

        for (auto it = product_.begin(); it != product_.end();) {
            auto [i, j] = it->first;
            if (i >= basis.size() || j >= basis.size())
                throw SchemaError("product entry references unknown basis index");
            if (i == unit_ || j == unit_)
                throw SchemaError("product table must not contain unit pairs");
            if (!pair_in_window(i, j))
                throw SchemaError("product entry (" + basis[i].id + ", " + basis[j].id +
                                  ") is out of window");
            std::uint32_t d = basis[i].degree + basis[j].degree;
            for (const auto& [t, c] : it->second.terms) {
                if (basis[t].degree != d)
                    throw SchemaError("product (" + basis[i].id + ", " + basis[j].id +
                                      ") does not preserve degree");
                if (module_.field().is_zero(c))
                    throw SchemaError("zero coefficient stored in product table");
            }
            it = it->second.terms.empty() ? product_.erase(it) : std::next(it);
        }

        for (std::uint32_t i = 0; i < basis.size(); ++i) {
            if (i == unit_)
                continue;
            auto it = coproduct_.find(i);
            if (it == coproduct_.end())
                throw SchemaError("missing coproduct entry for '" + basis[i].id + "'");
            for (const auto& [lr, c] : it->second.terms) {
                if (lr.first >= basis.size() || lr.second >= basis.size())
                    throw SchemaError("coproduct entry references unknown basis index");
                if (basis[lr.first].degree + basis[lr.second].degree != basis[i].degree)
                    throw SchemaError("coproduct of '" + basis[i].id + "' does not preserve degree");
                if (module_.field().is_zero(c))
                    throw SchemaError("zero coefficient stored in coproduct table");
            }
        }
        if (coproduct_.count(unit_))
            throw SchemaError("coproduct table must not contain the unit");

        add_term(module_.field(), unit_coproduct_, unit_, unit_, module_.field().one());
    }

    const ModuleWindow<F>& module() const { return module_; }
    const F& field() const { return module_.field(); }
    std::uint32_t unit() const { return unit_; }
    const ProductTable& product_table() const { return product_; }
    const CoproductTable& coproduct_table() const { return coproduct_; }

    Element<F> unit_element() const { return module_.basis_vector(unit_); }

    bool pair_in_window(std::uint32_t i, std::uint32_t j) const {
        const auto& a = module_.basis()[i];
        const auto& b = module_.basis()[j];
        return a.degree + b.degree <= module_.window().max_degree &&
               a.value + b.value <= module_.window().max_value;
    }

    /// Product of two basis vectors. Unit pairs are definitional; for the
    /// rest the (degree, value) sums must stay inside the window.
    Element<F> basis_product(std::uint32_t i, std::uint32_t j) const {
        if (i == unit_)
            return module_.basis_vector(j);
        if (j == unit_)
            return module_.basis_vector(i);
        if (!pair_in_window(i, j)) {
            const auto& a = module_.basis()[i];
            const auto& b = module_.basis()[j];
            throw OutOfWindow("product (" + a.id + ")*(" + b.id + ") escapes the window: degree " +
                              std::to_string(a.degree + b.degree) + ", value " +
                              to_string(Rat(a.value + b.value)));
        }
        auto it = product_.find({i, j});
        return it == product_.end() ? Element<F>{} : it->second;
    }

    const TensorElement<F>& basis_coproduct(std::uint32_t i) const {
        if (i == unit_)
            return unit_coproduct_;
        return coproduct_.at(i);
    }

  private:
    ModuleWindow<F> module_;
    ProductTable product_;
    CoproductTable coproduct_;
    std::uint32_t unit_ = 0;
    TensorElement<F> unit_coproduct_;
};

/// Bilinear extension of the product table.
template <class F>
Element<F> multiply(const BialgebraInstance<F>& inst, const Element<F>& a, const Element<F>& b) {
    const F& f = inst.field();
    Element<F> out;
    for (const auto& [i, ca] : a.terms)
        for (const auto& [j, cb] : b.terms)
            accumulate(f, out, inst.basis_product(i, j), f.mul(ca, cb));
    return out;
}

/// Koszul-signed product on the tensor square:
/// (v (x) w)(x (x) y) = (-1)^(deg w * deg x) vx (x) wy.
template <class F>
TensorElement<F> tensor_multiply(const BialgebraInstance<F>& inst, const TensorElement<F>& s,
                                 const TensorElement<F>& t) {
    const F& f = inst.field();
    const auto& basis = inst.module().basis();
    TensorElement<F> out;
    for (const auto& [ab, cs] : s.terms) {
        for (const auto& [xy, ct] : t.terms) {
            typename F::Element c = f.mul(cs, ct);
            if ((basis[ab.second].degree & 1u) && (basis[xy.first].degree & 1u))
                c = f.neg(c);
            Element<F> left = inst.basis_product(ab.first, xy.first);
            Element<F> right = inst.basis_product(ab.second, xy.second);
            for (const auto& [li, lc] : left.terms)
                for (const auto& [ri, rc] : right.terms)
                    add_term(f, out, li, ri, f.mul(c, f.mul(lc, rc)));
        }
    }
    return out;
}

/// Linear extension of the coproduct table.
template <class F>
TensorElement<F> coproduct(const BialgebraInstance<F>& inst, const Element<F>& a) {
    const F& f = inst.field();
    TensorElement<F> out;
    for (const auto& [i, c] : a.terms)
        accumulate(f, out, inst.basis_coproduct(i), c);
    return out;
}

namespace detail {

template <class F>
std::uint32_t require_homogeneous_positive(const BialgebraInstance<F>& inst, const Element<F>& v,
                                           const char* who) {
    auto d = inst.module().degree_of(v);
    if (!d)
        throw Error(Diag::not_homogeneous,
                    std::string(who) + " needs a homogeneous nonzero element");
    if (*d == 0)
        throw Error(Diag::not_homogeneous, std::string(who) + " needs positive degree");
    return *d;
}

}  // namespace detail

/// Delta(v) - 1 (x) v - v (x) 1, for homogeneous v of positive degree.
/// In a window of the expected shape no term keeps a degree-0 factor;
/// if one does, the instance violates that shape and this is an error.
template <class F>
TensorElement<F> reduced_coproduct(const BialgebraInstance<F>& inst, const Element<F>& v) {
    detail::require_homogeneous_positive(inst, v, "reduced_coproduct");
    const F& f = inst.field();
    TensorElement<F> out = coproduct(inst, v);
    for (const auto& [i, c] : v.terms) {
        add_term(f, out, inst.unit(), i, f.neg(c));
        add_term(f, out, i, inst.unit(), f.neg(c));
    }
    const auto& basis = inst.module().basis();
    for (const auto& [lr, c] : out.terms)
        if (basis[lr.first].degree == 0 || basis[lr.second].degree == 0)
            throw Error(Diag::shape_violation,
                        "reduced coproduct keeps a degree-0 factor in (" + basis[lr.first].id +
                            ", " + basis[lr.second].id + ")");
    return out;
}

template <class F>
bool is_primitive(const BialgebraInstance<F>& inst, const Element<F>& v) {
    return reduced_coproduct(inst, v).is_zero();
}

/// Sign of the permutation (1..N) -> (I ascending, complement ascending),
/// by inversion count.
inline int sigma_sign(const std::vector<std::uint32_t>& I, std::uint32_t N) {
    std::uint64_t inversions = 0;
    std::uint32_t prev = 0;
    std::uint32_t t = 0;
    for (std::uint32_t i : I) {
        ++t;
        if (i < 1 || i > N)
            throw Error(Diag::precondition,
                        "subset element " + std::to_string(i) + " outside 1.." + std::to_string(N));
        if (i <= prev)
            throw Error(Diag::precondition, "subset must be strictly increasing");
        prev = i;
        inversions += i - t;  // elements of the complement smaller than i
    }
    return (inversions & 1u) ? -1 : +1;
}

/// v_I = v_{i_1} v_{i_2} ... v_{i_l} with I increasing; v_{} = 1.
template <class F>
Element<F> product_vI(const BialgebraInstance<F>& inst, const std::vector<Element<F>>& primitives,
                      const std::vector<std::uint32_t>& I) {
    Element<F> out = inst.unit_element();
    std::uint32_t prev = 0;
    for (std::uint32_t i : I) {
        if (i < 1 || i > primitives.size())
            throw Error(Diag::precondition, "index " + std::to_string(i) + " out of range");
        if (i <= prev)
            throw Error(Diag::precondition, "index set must be strictly increasing");
        prev = i;
        out = multiply(inst, out, primitives[i - 1]);
    }
    return out;
}

/// Closed coproduct formula for products of primitives of common degree m:
/// Delta(v_I) = sum over J subset of I of sigma(J)^m v_J (x) v_{I\J},
/// with the sign taken relative to the ordering of I.
template <class F>
TensorElement<F> coproduct_vI_formula(const BialgebraInstance<F>& inst,
                                      const std::vector<Element<F>>& primitives,
                                      const std::vector<std::uint32_t>& I, std::uint32_t m) {
    const F& f = inst.field();
    for (std::uint32_t i : I) {
        if (i < 1 || i > primitives.size())
            throw Error(Diag::precondition, "index " + std::to_string(i) + " out of range");
        const Element<F>& v = primitives[i - 1];
        std::uint32_t d = detail::require_homogeneous_positive(inst, v, "coproduct_vI_formula");
        if (d != m)
            throw Error(Diag::mixed_degree, "v_" + std::to_string(i) + " has degree " +
                                                std::to_string(d) + ", expected " +
                                                std::to_string(m));
        if (!is_primitive(inst, v))
            throw Error(Diag::not_primitive, "v_" + std::to_string(i) + " is not primitive");
    }
    const std::uint32_t l = static_cast<std::uint32_t>(I.size());
    TensorElement<F> out;
    for (std::uint64_t mask = 0; mask < (1ull << l); ++mask) {
        std::vector<std::uint32_t> J, Jpos, K;
        for (std::uint32_t t = 0; t < l; ++t) {
            if (mask & (1ull << t)) {
                J.push_back(I[t]);
                Jpos.push_back(t + 1);
            } else {
                K.push_back(I[t]);
            }
        }
        int sgn = (m & 1u) ? sigma_sign(Jpos, l) : +1;
        typename F::Element c = sgn < 0 ? f.neg(f.one()) : f.one();
        Element<F> vJ = product_vI(inst, primitives, J);
        Element<F> vK = product_vI(inst, primitives, K);
        for (const auto& [a, ca] : vJ.terms)
            for (const auto& [b, cb] : vK.terms)
                add_term(f, out, a, b, f.mul(c, f.mul(ca, cb)));
    }
    return out;
}

}  // namespace spicy
