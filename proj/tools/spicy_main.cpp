// spicy: build and check filtered bialgebra windows, probe group orbits,
// extract primitive sequences, and certify dimension growth against
// distinct-part partition counts. Exit codes: 0 pass, 1 failed check,
// 2 input/schema/precondition error.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spicy/checks.hpp"
#include "spicy/group_action.hpp"
#include "spicy/growth.hpp"
#include "spicy/json_io.hpp"
#include "spicy/models.hpp"

namespace {

using namespace spicy;

struct Options {
    std::string in_path;
    std::string out_path;
    std::string seq_path;
    std::string vectors_path;
    std::string kind;
    std::string field = "Q";
    std::string gens;   // comma-separated element expressions
    std::string words;  // comma-separated group words
    std::uint32_t n = 0;
    std::uint32_t nmax = 0;
    std::uint32_t m = 0;
    std::string c = "1";
    std::string lambda = "1";
    std::uint32_t orbit_bound = 10;
    std::uint32_t max_words = 8;
    std::uint32_t word_depth = 3;
    std::optional<std::uint32_t> max_degree;
    std::string max_value;
    std::string hr_points;
    bool use_generators = false;
    bool terse = false;
    bool report_meta = false;
    bool check_euler = true;
};

void emit(const Options& opt, const Json& j) {
    if (!opt.out_path.empty())
        write_json_file(opt.out_path, j);
}

void meta_header(const Options& opt) {
    if (opt.report_meta) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%F %T", std::gmtime(&now));
        std::cout << "# generated " << buf << " UTC\n";
    }
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos)
            j = s.size();
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j + 1;
    }
    return out;
}

Json report_json(const CheckReport& r) {
    Json j{{"name", r.name},
           {"pass", r.pass},
           {"checked", r.checked},
           {"skipped_window", r.skipped_window}};
    if (!r.pass) {
        j["failure"] = r.failure;
        j["witness"] = r.witness_ids;
    }
    return j;
}

void print_report(const CheckReport& r) {
    std::cout << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (checked " << r.checked;
    if (r.skipped_window)
        std::cout << ", skipped " << r.skipped_window << " at the window boundary";
    std::cout << ")\n";
    if (!r.pass) {
        std::cout << "  " << r.failure << "\n  witness:";
        for (const auto& id : r.witness_ids)
            std::cout << " " << id;
        std::cout << "\n";
    }
}

// ---------------------------------------------------------------- partitions

int cmd_partitions(const Options& opt) {
    meta_header(opt);
    PartitionTable table(opt.nmax);
    std::cout << "n q(n) p_odd(n)\n";
    for (std::uint32_t n = 0; n <= opt.nmax; ++n)
        std::cout << n << " " << table.q(n).get_str() << " " << table.p_odd(n).get_str() << "\n";
    EulerReport euler = euler_check(opt.nmax);
    if (opt.check_euler)
        std::cout << "euler: " << (euler.pass ? "PASS" : "FAIL")
                  << (euler.pass ? "" : " at n = " + std::to_string(*euler.first_mismatch)) << "\n";

    Json j{{"format", format_version}, {"kind", "partition-table"}, {"n_max", opt.nmax}};
    Json rows = Json::array();
    for (std::uint32_t n = 0; n <= opt.nmax; ++n)
        rows.push_back({{"n", n}, {"q", table.q(n).get_str()}, {"p_odd", table.p_odd(n).get_str()}});
    j["rows"] = std::move(rows);
    j["euler_pass"] = euler.pass;

    if (!opt.hr_points.empty()) {
        Json hr = Json::array();
        std::cout << "hr-ratio:\n";
        for (const std::string& s : split_list(opt.hr_points)) {
            std::uint32_t n = static_cast<std::uint32_t>(std::stoul(s));
            Rat r = hr_ratio(n);
            std::cout << "  n=" << n << " log q(n)/sqrt(n) ~ " << r.get_d() << "\n";
            hr.push_back({{"n", n}, {"ratio", to_string(r)}, {"approx", r.get_d()}});
        }
        j["hr"] = std::move(hr);
    }
    emit(opt, j);
    return euler.pass ? 0 : 1;
}

// --------------------------------------------------------------------- model

template <class F>
int cmd_model_with_field(const F& field, const Options& opt) {
    WindowLimits window;
    if (opt.kind == "telescope") {
        auto bundle = build_telescope_model(field);
        Json j = module_to_json(bundle.module, &bundle.action, bundle.generator_ids);
        std::cout << "telescope module over " << field.spec().str() << ": dim "
                  << bundle.module.dim() << "\n";
        emit(opt, j);
        return 0;
    }
    ShiftModelSpec spec;
    spec.n_generators = opt.n;
    spec.m = opt.m ? opt.m : (opt.kind == "exterior" ? 1 : 2);
    spec.c = rat_from_string(opt.c);
    spec.lambda = rat_from_string(opt.lambda);
    spec.window.max_degree = opt.max_degree.value_or(spec.m * opt.n);
    spec.window.max_value =
        opt.max_value.empty() ? spec.c * Rat(static_cast<long>(opt.n) * (opt.n + 1) / 2)
                              : rat_from_string(opt.max_value);
    ModelBundle<F> bundle = opt.kind == "exterior" ? build_exterior_model(field, spec)
                                                   : build_polynomial_model(field, spec);
    std::cout << opt.kind << " model over " << field.spec().str() << ": basis "
              << bundle.instance.module().dim() << ", product entries "
              << bundle.instance.product_table().size() << "\n";
    emit(opt, instance_to_json(bundle.instance, &bundle.action, bundle.generator_ids));
    return 0;
}

int cmd_model(const Options& opt) {
    meta_header(opt);
    if (opt.kind != "exterior" && opt.kind != "polynomial" && opt.kind != "telescope")
        throw SchemaError("unknown model kind '" + opt.kind + "'");
    if (opt.kind != "telescope" && opt.n == 0)
        throw SchemaError("--n must be positive");
    return with_field(FieldSpec::parse(opt.field),
                      [&](const auto& f) { return cmd_model_with_field(f, opt); });
}

// -------------------------------------------------------------------- verify

template <class F>
int cmd_verify_with_field(const F& field, const Options& opt, const Json& input) {
    LoadedFile<F> file = file_from_json(field, input);
    std::vector<CheckReport> reports;
    if (file.instance) {
        reports.push_back(check_bialgebra(*file.instance));
        reports.push_back(check_hopf_shape(*file.instance));
        reports.push_back(check_spicy_products(*file.instance));
    } else {
        std::cout << "module file: algebra axioms not applicable\n";
    }
    if (file.action)
        reports.push_back(check_spicy_action(file.module(), *file.action));

    bool pass = true;
    Json jr = Json::array();
    for (const CheckReport& r : reports) {
        print_report(r);
        jr.push_back(report_json(r));
        pass = pass && r.pass;
    }
    emit(opt, Json{{"format", format_version},
                   {"kind", "verify-report"},
                   {"pass", pass},
                   {"checks", std::move(jr)}});
    return pass ? 0 : 1;
}

int cmd_verify(const Options& opt) {
    meta_header(opt);
    Json input = read_json_file(opt.in_path);
    return with_field(field_of_json(input),
                      [&](const auto& f) { return cmd_verify_with_field(f, opt, input); });
}

// ----------------------------------------------------------------------- pbw

template <class F>
std::vector<Element<F>> gather_vectors(const F& field, const ModuleWindow<F>& mod,
                                       const LoadedFile<F>& file, const Options& opt) {
    std::vector<Element<F>> out;
    if (!opt.gens.empty()) {
        for (const std::string& expr : split_list(opt.gens))
            out.push_back(parse_element_expr(field, mod, expr));
        return out;
    }
    for (const std::string& id : file.generator_ids)
        out.push_back(mod.basis_vector(mod.index_of(id)));
    return out;
}

template <class F>
int cmd_pbw_with_field(const F& field, const Options& opt, const Json& input) {
    LoadedFile<F> file = file_from_json(field, input);
    if (!file.instance)
        throw SchemaError("pbw needs a bialgebra file");
    std::vector<Element<F>> prims = gather_vectors(field, file.instance->module(), file, opt);
    if (prims.empty())
        throw SchemaError("no vectors: pass --gens or add a \"generators\" hint to the file");
    std::uint32_t nmax = opt.nmax ? opt.nmax : static_cast<std::uint32_t>(prims.size());
    PbwReport rep = pbw_independence_check(*file.instance, prims, nmax);

    std::cout << "pbw independence, N = " << rep.nmax << ", degree m = " << rep.degree << "\n";
    Json blocks = Json::array();
    for (const PbwBlock& b : rep.blocks) {
        std::cout << "  |I| = " << b.size << ": rank " << b.rank << " / " << b.expected << " "
                  << (b.pass ? "ok" : "FAIL") << "\n";
        blocks.push_back(
            {{"size", b.size}, {"expected", b.expected}, {"rank", b.rank}, {"pass", b.pass}});
    }
    std::cout << "total rank " << rep.total_rank << " / " << (1ull << rep.nmax) << ": "
              << (rep.pass ? "PASS" : "FAIL") << "\n";
    if (!rep.pass)
        std::cout << "  " << rep.failure << "\n";
    emit(opt, Json{{"format", format_version},
                   {"kind", "pbw-report"},
                   {"nmax", rep.nmax},
                   {"degree", rep.degree},
                   {"pass", rep.pass},
                   {"total_rank", rep.total_rank},
                   {"blocks", std::move(blocks)}});
    return rep.pass ? 0 : 1;
}

int cmd_pbw(const Options& opt) {
    meta_header(opt);
    Json input = read_json_file(opt.in_path);
    return with_field(field_of_json(input),
                      [&](const auto& f) { return cmd_pbw_with_field(f, opt, input); });
}

// -------------------------------------------------------------- find-healthy

/// Reduced words over the action generators, shortest (by weighted length,
/// then spelling) first, identity excluded.
std::vector<GroupWord> default_words(const LengthFunction& len,
                                     const std::vector<std::string>& gens, std::uint32_t depth,
                                     std::uint32_t max_words) {
    std::set<GroupWord> seen;
    std::vector<GroupWord> frontier{GroupWord::identity()};
    seen.insert(frontier.front());
    for (std::uint32_t d = 0; d < depth; ++d) {
        std::vector<GroupWord> next;
        for (const GroupWord& w : frontier)
            for (const std::string& g : gens)
                for (int e : {1, -1}) {
                    GroupWord cand = w.concat(GroupWord::letter(g, e));
                    if (seen.insert(cand).second)
                        next.push_back(cand);
                }
        frontier = std::move(next);
    }
    std::vector<GroupWord> words(seen.begin(), seen.end());
    std::erase_if(words, [](const GroupWord& w) { return w.is_identity(); });
    std::stable_sort(words.begin(), words.end(), [&](const GroupWord& a, const GroupWord& b) {
        Rat la = len.length(a), lb = len.length(b);
        if (la != lb)
            return la < lb;
        return a.str() < b.str();
    });
    if (words.size() > max_words)
        words.resize(max_words);
    return words;
}

/// Module generators first, then their pairwise sums.
template <class F>
std::vector<Element<F>> default_candidates(const F& field, const ModuleWindow<F>& mod,
                                           const std::vector<std::string>& gen_ids) {
    std::vector<Element<F>> out;
    std::vector<std::uint32_t> idx;
    for (const std::string& id : gen_ids)
        idx.push_back(mod.index_of(id));
    for (std::uint32_t i : idx)
        out.push_back(mod.basis_vector(i));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            Element<F> e = mod.basis_vector(idx[a]);
            add_term(field, e, idx[b], field.one());
            out.push_back(e);
        }
    return out;
}

template <class F>
int cmd_find_healthy_with_field(const F& field, const Options& opt, const Json& input) {
    LoadedFile<F> file = file_from_json(field, input);
    const ModuleWindow<F>& mod = file.module();
    if (!file.action)
        throw SchemaError("find-healthy needs an action in the input file");

    std::vector<Element<F>> cands;
    if (!opt.gens.empty())
        for (const std::string& expr : split_list(opt.gens))
            cands.push_back(parse_element_expr(field, mod, expr));
    else if (!file.generator_ids.empty())
        cands = default_candidates(field, mod, file.generator_ids);
    else if (mod.dim() > 0)
        throw SchemaError("no candidate vectors: pass --gens or a \"generators\" hint");

    std::vector<GroupWord> words;
    if (!opt.words.empty())
        for (const std::string& w : split_list(opt.words))
            words.push_back(GroupWord::parse(w));
    else
        words = default_words(file.action->length(), file.action->generator_names(),
                              opt.word_depth, opt.max_words);

    OrbitVerdict<F> verdict = find_healthy(mod, *file.action, cands, words, opt.orbit_bound);

    Json j{{"format", format_version},
           {"kind", "orbit-verdict"},
           {"orbit_bound", opt.orbit_bound}};
    using Kind = typename OrbitVerdict<F>::Kind;
    if (verdict.kind == Kind::healthy_witness) {
        const auto& w = *verdict.witness;
        std::cout << "HEALTHY witness: v = " << mod.describe(w.v) << ", g = " << w.g.str()
                  << "\n  ranks:";
        for (std::uint32_t r : w.ranks)
            std::cout << " " << r;
        std::cout << "\n";
        j["verdict"] = "HealthyWitness";
        j["v"] = mod.describe(w.v);
        j["g"] = w.g.str();
        j["ranks"] = w.ranks;
    } else {
        j["verdict"] =
            verdict.kind == Kind::window_exhausted ? "WindowExhausted" : "SickUpToWindow";
        std::cout << (verdict.kind == Kind::window_exhausted ? "WINDOW EXHAUSTED"
                                                             : "SICK up to window")
                  << " (bound " << opt.orbit_bound << ")\n";
        Json outcomes = Json::array();
        for (const CandidateResult& res : verdict.outcomes) {
            std::string o = res.outcome == ProbeOutcome::finite
                                ? "d=" + std::to_string(*res.d)
                                : (res.outcome == ProbeOutcome::independent ? "independent"
                                                                            : "window-exhausted");
            std::cout << "  v = " << mod.describe(cands[res.v_index])
                      << ", g = " << words[res.g_index].str() << ": " << o << "\n";
            Json jo{{"v", mod.describe(cands[res.v_index])},
                    {"g", words[res.g_index].str()},
                    {"outcome", res.outcome == ProbeOutcome::finite ? "finite" : "window-exhausted"}};
            if (res.d)
                jo["d"] = *res.d;
            outcomes.push_back(std::move(jo));
        }
        if (outcomes.empty())
            std::cout << "  (no candidates: the window holds no nonzero vectors to probe)\n";
        j["outcomes"] = std::move(outcomes);
    }
    emit(opt, j);
    return 0;
}

int cmd_find_healthy(const Options& opt) {
    meta_header(opt);
    Json input = read_json_file(opt.in_path);
    return with_field(field_of_json(input),
                      [&](const auto& f) { return cmd_find_healthy_with_field(f, opt, input); });
}

// ------------------------------------------------------------------- extract

template <class F>
int cmd_extract_with_field(const F& field, const Options& opt, const Json& input) {
    LoadedFile<F> file = file_from_json(field, input);
    if (!file.instance)
        throw SchemaError("extract needs a bialgebra file");
    const ModuleWindow<F>& mod = file.instance->module();

    std::vector<Element<F>> vectors;
    Rat c = rat_from_string(opt.c);
    if (!opt.vectors_path.empty()) {
        auto [vs, file_c] = sequence_from_json(field, mod, read_json_file(opt.vectors_path));
        vectors = std::move(vs);
        if (opt.c == "1")
            c = file_c;  // explicit --c wins over the file's slope
    } else {
        vectors = gather_vectors(field, mod, file, opt);
    }
    if (vectors.empty())
        throw SchemaError("no input vectors: pass --gens or --vectors");

    ExtractionResult<F> res = extract_primitive_sequence(*file.instance, vectors, c);
    std::cout << "rank of the reduced-coproduct map k = " << res.k << "\n"
              << "extracted " << res.sequence.vectors.size() << " primitives, slope c*(k+1) = "
              << to_string(res.sequence.c) << "\n";
    for (std::size_t i = 0; i < res.sequence.vectors.size(); ++i)
        std::cout << "  w_" << (i + 1) << " = " << mod.describe(res.sequence.vectors[i]) << "\n";
    emit(opt, sequence_to_json(mod, res.sequence, res.k));
    return 0;
}

int cmd_extract(const Options& opt) {
    meta_header(opt);
    Json input = read_json_file(opt.in_path);
    return with_field(field_of_json(input),
                      [&](const auto& f) { return cmd_extract_with_field(f, opt, input); });
}

// ------------------------------------------------------------------- certify

void print_certificate(const GrowthCertificate& cert) {
    std::cout << "n q(n) rank pass\n";
    for (const GrowthRow& row : cert.rows)
        std::cout << row.n << " " << row.q.get_str() << " " << row.rank << " "
                  << (row.pass ? "ok" : "FAIL") << "\n";
    if (cert.truncated)
        std::cout << "truncated at n = " << cert.n_reached << " (requested " << cert.n_requested
                  << "): " << cert.truncation_reason << "\n";
    std::cout << "growth certificate: " << (cert.pass ? "PASS" : "FAIL") << "\n";
    if (!cert.pass)
        std::cout << "  " << cert.failure << "\n";
}

template <class F>
int certify_and_emit(const BialgebraInstance<F>& inst, const PrimitiveSequence<F>& seq,
                     const Options& opt) {
    GrowthCertificate cert = certify_growth(inst, seq, opt.nmax, !opt.terse);
    print_certificate(cert);
    emit(opt, certificate_to_json(cert));
    return cert.pass ? 0 : 1;
}

template <class F>
int cmd_certify_file_with_field(const F& field, const Options& opt, const Json& input) {
    LoadedFile<F> file = file_from_json(field, input);
    if (!file.instance)
        throw SchemaError("certify needs a bialgebra file");
    auto [vectors, c] = sequence_from_json(field, file.instance->module(),
                                           read_json_file(opt.seq_path));
    PrimitiveSequence<F> seq = make_primitive_sequence(*file.instance, std::move(vectors), c);
    return certify_and_emit(*file.instance, seq, opt);
}

std::uint32_t max_distinct_parts(std::uint32_t n) {
    std::uint32_t l = 0;
    while ((l + 1) * (l + 2) / 2 <= n)
        ++l;
    return l;
}

template <class F>
int cmd_certify_model_with_field(const F& field, const Options& opt) {
    if (opt.kind != "exterior" && opt.kind != "polynomial")
        throw SchemaError("certify pipeline supports the exterior and polynomial models");
    if (opt.nmax == 0) {
        GrowthCertificate empty;
        empty.field = field.spec();
        empty.c = rat_from_string(opt.c);
        empty.m = opt.m ? opt.m : (opt.kind == "exterior" ? 1 : 2);
        print_certificate(empty);
        emit(opt, certificate_to_json(empty));
        return 0;
    }

    ShiftModelSpec spec;
    spec.m = opt.m ? opt.m : (opt.kind == "exterior" ? 1 : 2);
    spec.c = rat_from_string(opt.c);
    spec.lambda = rat_from_string(opt.lambda);
    std::uint32_t lmax = max_distinct_parts(opt.nmax);
    std::uint32_t want = opt.use_generators ? opt.nmax : opt.nmax + 1;
    spec.window.max_degree = opt.max_degree.value_or(spec.m * std::max<std::uint32_t>(lmax, 1));
    spec.window.max_value =
        opt.max_value.empty()
            ? spec.c * Rat(static_cast<long>(opt.use_generators ? opt.nmax : opt.nmax + lmax))
            : rat_from_string(opt.max_value);

    // generators must fit the window: x_N needs value c*N
    Rat cap = spec.window.max_value / spec.c;
    Int fit = cap.get_num() / cap.get_den();
    if (fit < 1)
        throw SchemaError("window cannot hold a single generator");
    std::uint32_t n_fit = fit >= static_cast<long>(want)
                              ? want
                              : static_cast<std::uint32_t>(fit.get_ui());
    spec.n_generators = n_fit;

    ModelBundle<F> bundle = opt.kind == "exterior" ? build_exterior_model(field, spec)
                                                   : build_polynomial_model(field, spec);
    const BialgebraInstance<F>& inst = bundle.instance;
    const ModuleWindow<F>& mod = inst.module();

    std::vector<Element<F>> vectors;
    Rat slope;
    if (opt.use_generators) {
        for (const std::string& id : bundle.generator_ids)
            vectors.push_back(mod.basis_vector(mod.index_of(id)));
        slope = spec.c;
        std::cout << "sequence: model generators x_1..x_" << vectors.size() << ", c = "
                  << to_string(slope) << "\n";
    } else {
        std::vector<Element<F>> cands = default_candidates(field, mod, bundle.generator_ids);
        std::vector<GroupWord> words = default_words(bundle.action.length(),
                                                     bundle.action.generator_names(),
                                                     opt.word_depth, opt.max_words);
        // the construction consumes exactly nmax orbit steps, and the
        // auto-sized window holds exactly that many shifted generators
        std::uint32_t bound = opt.nmax;
        OrbitVerdict<F> verdict = find_healthy(mod, bundle.action, cands, words, bound);
        if (verdict.kind != OrbitVerdict<F>::Kind::healthy_witness) {
            std::cout << "pipeline: no healthy witness within bound " << bound << "\n";
            return 1;
        }
        const auto& w = *verdict.witness;
        std::cout << "pipeline: healthy witness v = " << mod.describe(w.v) << ", g = "
                  << w.g.str() << "\n";
        Element<F> cur = w.v;
        for (std::uint32_t i = 1; i <= opt.nmax; ++i) {
            cur = act(mod, bundle.action, w.g, cur);
            vectors.push_back(cur);
        }
        slope = bundle.action.length().length(w.g) + mod.value_of(w.v);
        ExtractionResult<F> res = extract_primitive_sequence(inst, vectors, slope);
        std::cout << "pipeline: extraction k = " << res.k << ", " << res.sequence.vectors.size()
                  << " primitives, slope " << to_string(res.sequence.c) << "\n";
        return certify_and_emit(inst, res.sequence, opt);
    }
    PrimitiveSequence<F> seq = make_primitive_sequence(inst, std::move(vectors), slope);
    return certify_and_emit(inst, seq, opt);
}

int cmd_certify(const Options& opt) {
    meta_header(opt);
    if (!opt.in_path.empty() && !opt.seq_path.empty()) {
        Json input = read_json_file(opt.in_path);
        return with_field(field_of_json(input), [&](const auto& f) {
            return cmd_certify_file_with_field(f, opt, input);
        });
    }
    if (opt.kind.empty())
        throw SchemaError("pass either --in with --seq, or --kind for the model pipeline");
    return with_field(FieldSpec::parse(opt.field),
                      [&](const auto& f) { return cmd_certify_model_with_field(f, opt); });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact algebra windows: axioms, orbits, and growth certificates"};
    app.require_subcommand(1);
    Options opt;

    auto add_io = [&](CLI::App* sub, bool need_in) {
        auto* in = sub->add_option("--in", opt.in_path, "input instance file (JSON)");
        if (need_in)
            in->required();
        sub->add_option("--out", opt.out_path, "write machine-readable JSON here");
        sub->add_flag("--report-meta", opt.report_meta,
                      "add a timestamp header to the human-readable report");
    };

    CLI::App* model = app.add_subcommand("model", "build a bundled model and emit its JSON");
    model->add_option("--kind", opt.kind, "exterior | polynomial | telescope")->required();
    model->add_option("--field", opt.field, "Q or Fp:<p> (default Q)");
    model->add_option("--n", opt.n, "number of generators");
    model->add_option("--m", opt.m, "generator degree (default 1 exterior / 2 polynomial)");
    model->add_option("--c", opt.c, "value slope, |x_i| = c*i (default 1)");
    model->add_option("--lambda", opt.lambda, "length of the shift generator (default 1)");
    model->add_option("--max-degree", opt.max_degree, "window degree cap (default m*n)");
    model->add_option("--max-value", opt.max_value, "window value cap (default c*n(n+1)/2)");
    add_io(model, false);

    CLI::App* verify = app.add_subcommand("verify", "run the axiom checkers on an instance file");
    add_io(verify, true);

    CLI::App* pbw = app.add_subcommand("pbw", "check independence of the products v_I");
    pbw->add_option("--nmax", opt.nmax, "number of primitives (default: all supplied)");
    pbw->add_option("--gens", opt.gens, "comma-separated element expressions");
    add_io(pbw, true);

    CLI::App* fh = app.add_subcommand("find-healthy", "scan candidates for an independent orbit");
    fh->add_option("--orbit-bound", opt.orbit_bound, "probe depth (default 10)");
    fh->add_option("--gens", opt.gens, "candidate vectors (element expressions)");
    fh->add_option("--words", opt.words, "candidate group words, e.g. t,t^-1,t^2");
    fh->add_option("--max-words", opt.max_words, "cap on enumerated words (default 8)");
    fh->add_option("--word-depth", opt.word_depth, "letter depth of word enumeration (default 3)");
    add_io(fh, true);

    CLI::App* extract = app.add_subcommand("extract", "extract a primitive sequence");
    extract->add_option("--c", opt.c, "value slope of the input sequence (default 1)");
    extract->add_option("--gens", opt.gens, "input vectors (element expressions)");
    extract->add_option("--vectors", opt.vectors_path, "input vectors from a sequence file");
    add_io(extract, true);

    CLI::App* certify = app.add_subcommand("certify", "emit a growth certificate");
    certify->add_option("--nmax", opt.nmax, "certify dim V^n >= q(n) for n <= nmax")->required();
    certify->add_option("--seq", opt.seq_path, "primitive-sequence file (with --in)");
    certify->add_option("--kind", opt.kind, "model pipeline: exterior | polynomial");
    certify->add_option("--field", opt.field, "model pipeline field (default Q)");
    certify->add_option("--m", opt.m, "generator degree");
    certify->add_option("--c", opt.c, "value slope (default 1)");
    certify->add_option("--lambda", opt.lambda, "shift length (default 1)");
    certify->add_option("--max-degree", opt.max_degree, "window degree cap override");
    certify->add_option("--max-value", opt.max_value, "window value cap override");
    certify->add_option("--orbit-bound", opt.orbit_bound, "healthy-search bound");
    certify->add_flag("--use-generators", opt.use_generators,
                      "skip the healthy search and use the model generators as the sequence");
    certify->add_flag("--terse", opt.terse, "omit subset lists from the certificate");
    add_io(certify, false);

    CLI::App* partitions = app.add_subcommand("partitions", "q(n) and p_odd(n) tables");
    partitions->add_option("--nmax", opt.nmax, "table up to this n")->required();
    partitions->add_option("--hr", opt.hr_points, "comma-separated n for the hr-ratio diagnostic");
    add_io(partitions, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (model->parsed())
            return cmd_model(opt);
        if (verify->parsed())
            return cmd_verify(opt);
        if (pbw->parsed())
            return cmd_pbw(opt);
        if (fh->parsed())
            return cmd_find_healthy(opt);
        if (extract->parsed())
            return cmd_extract(opt);
        if (certify->parsed())
            return cmd_certify(opt);
        if (partitions->parsed())
            return cmd_partitions(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
