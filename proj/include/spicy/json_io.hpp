#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spicy/error.hpp"
#include "spicy/group_action.hpp"
#include "spicy/growth.hpp"
#include "spicy/hopf.hpp"

namespace spicy {

using Json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

/// Contents of an instance file: a bialgebra window or a bare module
/// window, optionally with a group action and module-generator hints.
template <class F>
struct LoadedFile {
    std::optional<BialgebraInstance<F>> instance;
    std::optional<ModuleWindow<F>> module_only;
    std::optional<GroupActionWindow<F>> action;
    std::vector<std::string> generator_ids;

    const ModuleWindow<F>& module() const {
        return instance ? instance->module() : *module_only;
    }
};

namespace io_detail {

inline const Json& need(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(std::string("missing key '") + key + "'");
    return *it;
}

inline std::string need_string(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_string())
        throw SchemaError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

inline std::uint32_t need_u32(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_unsigned())
        throw SchemaError(std::string("'") + key + "' must be a nonnegative integer");
    return v.get<std::uint32_t>();
}

inline Rat need_rat(const Json& j, const char* key) {
    try {
        return rat_from_string(need_string(j, key));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
}

template <class F>
Json element_terms(const F& f, const ModuleWindow<F>& mod, const Element<F>& e) {
    Json out = Json::array();
    for (const auto& [i, c] : e.terms)
        out.push_back({{"id", mod.basis()[i].id}, {"coeff", f.str(c)}});
    return out;
}

template <class F>
Element<F> parse_element_terms(const F& f, const ModuleWindow<F>& mod, const Json& j) {
    if (!j.is_array())
        throw SchemaError("term list must be an array");
    Element<F> e;
    for (const Json& t : j) {
        typename F::Element c = f.parse(need_string(t, "coeff"));
        if (f.is_zero(c))
            throw SchemaError("zero coefficient stored in a term list");
        add_term(f, e, mod.index_of(need_string(t, "id")), c);
    }
    return e;
}

}  // namespace io_detail

template <class F>
Json instance_to_json(const BialgebraInstance<F>& inst, const GroupActionWindow<F>* action,
                      const std::vector<std::string>& generator_ids);

template <class F>
Json module_to_json(const ModuleWindow<F>& mod, const GroupActionWindow<F>* action,
                    const std::vector<std::string>& generator_ids);

namespace io_detail {

template <class F>
Json file_skeleton(const ModuleWindow<F>& mod, const char* kind) {
    const F& f = mod.field();
    Json j;
    j["format"] = format_version;
    j["kind"] = kind;
    j["field"] = f.spec().str();
    j["window"] = {{"max_degree", mod.window().max_degree},
                   {"max_value", to_string(mod.window().max_value)}};
    Json basis = Json::array();
    for (const BasisElement& b : mod.basis())
        basis.push_back({{"id", b.id}, {"degree", b.degree}, {"value", to_string(b.value)}});
    j["basis"] = std::move(basis);
    return j;
}

template <class F>
void append_action(Json& j, const ModuleWindow<F>& mod, const GroupActionWindow<F>& action) {
    const F& f = mod.field();
    Json gens = Json::array();
    for (const auto& [name, op] : action.operators()) {
        Json images = Json::array();
        for (const auto& [idx, img] : op.image)
            images.push_back(
                {{"src", mod.basis()[idx].id}, {"terms", element_terms(f, mod, img)}});
        Json inverse_images = Json::array();
        for (const auto& [idx, img] : op.inverse_image)
            inverse_images.push_back(
                {{"src", mod.basis()[idx].id}, {"terms", element_terms(f, mod, img)}});
        gens.push_back({{"id", name},
                        {"length", to_string(action.length().weight(name))},
                        {"images", std::move(images)},
                        {"inverse_images", std::move(inverse_images)}});
    }
    j["action"] = {{"generators", std::move(gens)}};
}

}  // namespace io_detail

template <class F>
Json instance_to_json(const BialgebraInstance<F>& inst, const GroupActionWindow<F>* action,
                      const std::vector<std::string>& generator_ids) {
    const ModuleWindow<F>& mod = inst.module();
    const F& f = mod.field();
    Json j = io_detail::file_skeleton(mod, "bialgebra");
    if (!generator_ids.empty())
        j["generators"] = generator_ids;

    Json product = Json::array();
    for (const auto& [ij, e] : inst.product_table())
        product.push_back({{"left", mod.basis()[ij.first].id},
                           {"right", mod.basis()[ij.second].id},
                           {"terms", io_detail::element_terms(f, mod, e)}});
    j["product"] = std::move(product);

    Json coproduct = Json::array();
    for (const auto& [i, t] : inst.coproduct_table()) {
        Json terms = Json::array();
        for (const auto& [lr, c] : t.terms)
            terms.push_back({{"left", mod.basis()[lr.first].id},
                             {"right", mod.basis()[lr.second].id},
                             {"coeff", f.str(c)}});
        coproduct.push_back({{"id", mod.basis()[i].id}, {"terms", std::move(terms)}});
    }
    j["coproduct"] = std::move(coproduct);

    if (action)
        io_detail::append_action(j, mod, *action);
    return j;
}

template <class F>
Json module_to_json(const ModuleWindow<F>& mod, const GroupActionWindow<F>* action,
                    const std::vector<std::string>& generator_ids) {
    Json j = io_detail::file_skeleton(mod, "module");
    if (!generator_ids.empty())
        j["generators"] = generator_ids;
    if (action)
        io_detail::append_action(j, mod, *action);
    return j;
}

inline FieldSpec field_of_json(const Json& j) {
    if (io_detail::need(j, "format") != Json(format_version))
        throw SchemaError("unsupported format version");
    return FieldSpec::parse(io_detail::need_string(j, "field"));
}

template <class F>
LoadedFile<F> file_from_json(const F& f, const Json& j) {
    using io_detail::need;
    using io_detail::need_rat;
    using io_detail::need_string;
    using io_detail::need_u32;

    if (f.spec() != field_of_json(j))
        throw SchemaError("field spec does not match the file");
    std::string kind = need_string(j, "kind");
    if (kind != "bialgebra" && kind != "module")
        throw SchemaError("kind must be \"bialgebra\" or \"module\"");

    const Json& jw = need(j, "window");
    WindowLimits window{need_u32(jw, "max_degree"), need_rat(jw, "max_value")};

    std::vector<BasisElement> basis;
    for (const Json& b : need(j, "basis"))
        basis.push_back({need_string(b, "id"), need_u32(b, "degree"), need_rat(b, "value")});
    ModuleWindow<F> mod(f, std::move(basis), window);

    LoadedFile<F> out;
    if (j.contains("generators"))
        for (const Json& g : j["generators"]) {
            if (!g.is_string())
                throw SchemaError("'generators' must hold basis ids");
            mod.index_of(g.get<std::string>());  // must resolve
            out.generator_ids.push_back(g.get<std::string>());
        }

    if (j.contains("action")) {
        const Json& ja = need(j["action"], "generators");
        std::map<std::string, typename GroupActionWindow<F>::Operator> ops;
        LengthFunction len;
        for (const Json& jg : ja) {
            std::string name = need_string(jg, "id");
            len.set_weight(name, need_rat(jg, "length"));
            typename GroupActionWindow<F>::Operator op;
            for (const Json& im : need(jg, "images")) {
                std::uint32_t src = mod.index_of(need_string(im, "src"));
                if (!op.image
                         .emplace(src, io_detail::parse_element_terms(f, mod, need(im, "terms")))
                         .second)
                    throw SchemaError("duplicate image for '" + need_string(im, "src") + "'");
            }
            for (const Json& im : need(jg, "inverse_images")) {
                std::uint32_t src = mod.index_of(need_string(im, "src"));
                if (!op.inverse_image
                         .emplace(src, io_detail::parse_element_terms(f, mod, need(im, "terms")))
                         .second)
                    throw SchemaError("duplicate inverse image for '" + need_string(im, "src") +
                                      "'");
            }
            if (!ops.emplace(name, std::move(op)).second)
                throw SchemaError("duplicate action generator '" + name + "'");
        }
        out.action.emplace(mod, std::move(ops), std::move(len));
    }

    if (kind == "module") {
        if (j.contains("product") || j.contains("coproduct"))
            throw SchemaError("module files cannot carry product/coproduct tables");
        out.module_only.emplace(std::move(mod));
        return out;
    }

    typename BialgebraInstance<F>::ProductTable product;
    for (const Json& jp : need(j, "product")) {
        std::uint32_t l = mod.index_of(need_string(jp, "left"));
        std::uint32_t r = mod.index_of(need_string(jp, "right"));
        if (!product.emplace(std::make_pair(l, r),
                             io_detail::parse_element_terms(f, mod, need(jp, "terms")))
                 .second)
            throw SchemaError("duplicate product entry");
    }
    typename BialgebraInstance<F>::CoproductTable coproduct;
    for (const Json& jc : need(j, "coproduct")) {
        std::uint32_t i = mod.index_of(need_string(jc, "id"));
        TensorElement<F> t;
        for (const Json& jt : need(jc, "terms")) {
            typename F::Element c = f.parse(need_string(jt, "coeff"));
            if (f.is_zero(c))
                throw SchemaError("zero coefficient stored in a coproduct entry");
            add_term(f, t, mod.index_of(need_string(jt, "left")),
                     mod.index_of(need_string(jt, "right")), c);
        }
        if (!coproduct.emplace(i, std::move(t)).second)
            throw SchemaError("duplicate coproduct entry");
    }
    out.instance.emplace(std::move(mod), std::move(product), std::move(coproduct));
    return out;
}

/// Sums of signed scalar multiples of basis ids: "x1", "x1+x2", "2*x1-1/3*x2".
template <class F>
Element<F> parse_element_expr(const F& f, const ModuleWindow<F>& mod, const std::string& expr) {
    Element<F> out;
    std::size_t i = 0;
    bool first = true;
    while (i < expr.size()) {
        int sign = 1;
        if (expr[i] == '+' || expr[i] == '-') {
            sign = expr[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw SchemaError("expected '+' or '-' in expression '" + expr + "'");
        }
        first = false;
        std::size_t j = i;
        while (j < expr.size() && expr[j] != '+' && expr[j] != '-')
            ++j;
        std::string term = expr.substr(i, j - i);
        if (term.empty())
            throw SchemaError("empty term in expression '" + expr + "'");
        typename F::Element coeff = sign < 0 ? f.neg(f.one()) : f.one();
        std::string id = term;
        if (auto star = term.find('*'); star != std::string::npos) {
            coeff = f.mul(coeff, f.parse(term.substr(0, star)));
            id = term.substr(star + 1);
        }
        add_term(f, out, mod.index_of(id), coeff);
        i = j;
    }
    return out;
}

template <class F>
Json sequence_to_json(const ModuleWindow<F>& mod, const PrimitiveSequence<F>& seq,
                      std::optional<std::uint32_t> k) {
    const F& f = mod.field();
    Json j;
    j["format"] = format_version;
    j["kind"] = "primitive-sequence";
    j["field"] = f.spec().str();
    j["c"] = to_string(seq.c);
    j["m"] = seq.m;
    if (k)
        j["k"] = *k;
    Json vectors = Json::array();
    for (const Element<F>& v : seq.vectors)
        vectors.push_back(io_detail::element_terms(f, mod, v));
    j["vectors"] = std::move(vectors);
    return j;
}

/// Reads vectors + slope; primitive-sequence validation is the caller's call.
template <class F>
std::pair<std::vector<Element<F>>, Rat> sequence_from_json(const F& f, const ModuleWindow<F>& mod,
                                                           const Json& j) {
    if (io_detail::need(j, "format") != Json(format_version))
        throw SchemaError("unsupported format version");
    if (io_detail::need_string(j, "kind") != "primitive-sequence")
        throw SchemaError("not a primitive-sequence file");
    if (f.spec() != FieldSpec::parse(io_detail::need_string(j, "field")))
        throw SchemaError("sequence field does not match the instance");
    std::vector<Element<F>> vectors;
    for (const Json& v : io_detail::need(j, "vectors"))
        vectors.push_back(io_detail::parse_element_terms(f, mod, v));
    return {std::move(vectors), io_detail::need_rat(j, "c")};
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest_string(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Json certificate_to_json(const GrowthCertificate& cert) {
    Json j;
    j["format"] = format_version;
    j["kind"] = "growth-certificate";
    j["field"] = cert.field.str();
    j["c"] = to_string(cert.c);
    j["m"] = cert.m;
    j["n_requested"] = cert.n_requested;
    j["n_reached"] = cert.n_reached;
    j["truncated"] = cert.truncated;
    if (cert.truncated)
        j["truncation_reason"] = cert.truncation_reason;
    j["pass"] = cert.pass;
    if (!cert.pass)
        j["failure"] = cert.failure;
    Json rows = Json::array();
    for (const GrowthRow& row : cert.rows) {
        Json r{{"n", row.n}, {"q", row.q.get_str()}, {"rank", row.rank}, {"pass", row.pass}};
        if (!row.subsets.empty()) {
            Json subsets = Json::array();
            for (const auto& I : row.subsets)
                subsets.push_back(I);
            r["subsets"] = std::move(subsets);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["digest"] = digest_string(fnv1a64(j.dump()));
    return j;
}

/// Recomputes the digest over the document with its digest removed.
inline bool certificate_digest_ok(Json j) {
    auto it = j.find("digest");
    if (it == j.end() || !it->is_string())
        return false;
    std::string stored = it->get<std::string>();
    j.erase("digest");
    return stored == digest_string(fnv1a64(j.dump()));
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("bad JSON in '" + path + "': " + e.what());
    }
}

inline void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw SchemaError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace spicy
