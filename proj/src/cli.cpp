#include "fh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "fh/amalgam.hpp"
#include "fh/config.hpp"
#include "fh/error.hpp"
#include "fh/exquisite.hpp"
#include "fh/generic.hpp"
#include "fh/io.hpp"
#include "fh/matroid.hpp"
#include "fh/predim.hpp"
#include "fh/reducts.hpp"
#include "fh/suites.hpp"
#include "fh/transfer.hpp"

namespace fh::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

SymmetryGroup group_from_spec(const std::string& spec, int arity) {
    if (spec == "sym") return SymmetryGroup::full(arity);
    if (spec == "id") return SymmetryGroup::trivial(arity);
    SymmetryGroup g = load_structure(spec).group();
    if (arity > 0 && g.arity() != arity)
        err::raise("arity-mismatch", "group file arity differs");
    return g;
}

Bits set_or_universe(const FiniteStructure& m, const std::string& csv, bool given) {
    if (!given) return m.universe_mask();
    return m.mask_of(split_csv(csv));
}

void emit_structure(const FiniteStructure& s, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << serialize_structure(s);
    else
        save_structure(s, out_path);
}

std::string join_names(const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? " " : "") + names[i];
    return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err_stream) {
    CLI::App app{"finite predimension and amalgamation toolkit"};
    app.require_subcommand(1);

    int bound = -1, jobs = -1;
    bool json_mode = false;
    app.add_option("--bound", bound, "exhaustive search bound (elements)");
    app.add_option("--jobs", jobs, "worker threads for parallel sweeps");
    app.add_flag("--json", json_mode, "structured output");

    std::string file, file2, file3, set_csv, over_csv, over_file, out_path, to_spec, type_path;
    bool trace = false, single_step = false;

    auto* c_delta = app.add_subcommand("delta", "predimension of a set");
    c_delta->add_option("file", file)->required();
    auto* delta_set = c_delta->add_option("--set", set_csv, "comma-separated elements");

    auto* c_dim = app.add_subcommand("dim", "dimension of a set");
    c_dim->add_option("file", file)->required();
    auto* dim_set = c_dim->add_option("--set", set_csv);

    auto* c_sscl = app.add_subcommand("sscl", "self-sufficient closure");
    c_sscl->add_option("file", file)->required();
    auto* sscl_set = c_sscl->add_option("--set", set_csv);
    c_sscl->add_flag("--trace", trace, "print the closure certificate");

    auto* c_dcl = app.add_subcommand("dclosure", "d-closure of a set");
    c_dcl->add_option("file", file)->required();
    auto* dcl_set = c_dcl->add_option("--set", set_csv);

    auto* c_incl = app.add_subcommand("inclass", "class membership (delta >= 0 hereditarily)");
    c_incl->add_option("file", file)->required();

    auto* c_mat = app.add_subcommand("matroid", "pregeometry queries");
    std::string mat_op;
    c_mat->add_option("op", mat_op, "rank|closure|geometry|iso")->required();
    c_mat->add_option("file", file)->required();
    c_mat->add_option("second", file2);
    auto* mat_set = c_mat->add_option("--set", set_csv);

    auto* c_am = app.add_subcommand("amalgam", "free join over a shared base");
    c_am->add_option("b1", file)->required();
    c_am->add_option("b2", file2)->required();
    c_am->add_option("--over", over_csv, "shared elements");
    c_am->add_option("-o,--out", out_path);

    auto* c_desym = app.add_subcommand("desym", "desymmetrization over a base");
    c_desym->add_option("file", file)->required();
    c_desym->add_option("--over-file", over_file, "base structure (.fhs, trivial group)");
    auto* desym_over = c_desym->add_option("--over", over_csv, "relation-free base elements");
    c_desym->add_option("-o,--out", out_path);

    auto* c_relax = app.add_subcommand("relax", "relaxation over a base");
    c_relax->add_option("file", file)->required();
    c_relax->add_option("--over", over_csv);
    c_relax->add_option("-o,--out", out_path);

    auto* c_symr = app.add_subcommand("symrelax", "relaxed symmetrization over a base");
    c_symr->add_option("file", file)->required();
    c_symr->add_option("--over-file", over_file, "base structure (.fhs) carrying the group");
    auto* symr_over = c_symr->add_option("--over", over_csv);
    c_symr->add_option("--to", to_spec, "target group when --over is used (sym|id|file)");
    c_symr->add_option("-o,--out", out_path);

    auto* c_iso = app.add_subcommand("isoext", "isomorphism extension step");
    std::string iso_dir;
    c_iso->add_option("direction", iso_dir, "g2ns|ns2g")->required();
    c_iso->add_option("a1", file)->required();
    c_iso->add_option("a2", file2)->required();
    c_iso->add_option("c", file3)->required();
    c_iso->add_option("-o,--out", out_path, "prefix for the two outputs");

    auto* c_gen = app.add_subcommand("generic", "generic-structure approximants");
    auto* c_gen_build = c_gen->add_subcommand("build");
    int g_arity = 3, g_steps = 50, g_size = 4, g_maxA = 3, g_maxC = 4;
    std::uint64_t g_seed = 1;
    std::string g_group = "sym";
    c_gen_build->add_option("--arity", g_arity);
    c_gen_build->add_option("--group", g_group, "sym|id|file");
    c_gen_build->add_option("--steps", g_steps);
    c_gen_build->add_option("--size", g_size, "catalog template size bound");
    c_gen_build->add_option("--seed", g_seed);
    c_gen_build->add_option("-o,--out", out_path);
    auto* c_gen_audit = c_gen->add_subcommand("audit");
    c_gen_audit->add_option("file", file)->required();
    c_gen_audit->add_option("--maxA", g_maxA);
    c_gen_audit->add_option("--maxC", g_maxC);

    auto* c_exq = app.add_subcommand("exquisite", "atomic-type machinery");
    std::string exq_op;
    int exq_arity = 3;
    c_exq->add_option("op", exq_op, "base|check|lift|for-arity")->required();
    c_exq->add_option("arg", file, "type file, or arity for for-arity");
    c_exq->add_option("-o,--out", out_path);

    auto* c_coll = app.add_subcommand("collisions", "collision counts");
    c_coll->add_option("file", file)->required();
    c_coll->add_option("--type", type_path)->required();

    auto* c_dec = app.add_subcommand("decollide", "collision elimination");
    c_dec->add_option("file", file)->required();
    c_dec->add_option("--type", type_path)->required();
    c_dec->add_flag("--single-step", single_step);
    c_dec->add_option("-o,--out", out_path);

    auto* c_red = app.add_subcommand("reduct", "reduct functors");
    std::string red_kind;
    c_red->add_option("kind", red_kind, "group|exquisite")->required();
    c_red->add_option("file", file)->required();
    c_red->add_option("--to", to_spec, "target group (group kind)");
    c_red->add_option("--type", type_path, "type file (exquisite kind)");
    c_red->add_option("-o,--out", out_path);

    auto* c_mix = app.add_subcommand("mixed", "mixed amalgams");
    std::string mix_kind;
    c_mix->add_option("kind", mix_kind, "sub|exq")->required();
    c_mix->add_option("a", file)->required();
    c_mix->add_option("b", file2)->required();
    c_mix->add_option("--type", type_path);
    c_mix->add_option("-o,--out", out_path);

    auto* c_ben = app.add_subcommand("benign", "benign pairs");
    std::string ben_kind;
    c_ben->add_option("kind", ben_kind, "sub|exq")->required();
    c_ben->add_option("f", file)->required();
    c_ben->add_option("--to", to_spec);
    c_ben->add_option("--type", type_path);
    c_ben->add_option("-o,--out", out_path, "prefix for the two outputs");

    auto* c_ver = app.add_subcommand("verify", "run a property suite");
    std::string suite_name;
    std::uint64_t v_seed = 1;
    int v_count = 0;
    c_ver->add_option("suite", suite_name, "suite name or 'all'")->required();
    c_ver->add_option("--seed", v_seed);
    c_ver->add_option("--count", v_count);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err_stream << "ERROR usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (bound >= 0) config().set_bound(bound);
        if (jobs >= 0) config().jobs = jobs;

        if (*c_delta) {
            FiniteStructure m = load_structure(file);
            int v = delta(m, set_or_universe(m, set_csv, delta_set->count() > 0));
            if (json_mode)
                out << json{{"value", v}}.dump() << "\n";
            else
                out << v << "\n";
        } else if (*c_dim) {
            FiniteStructure m = load_structure(file);
            int v = dim(m, set_or_universe(m, set_csv, dim_set->count() > 0));
            if (json_mode)
                out << json{{"value", v}}.dump() << "\n";
            else
                out << v << "\n";
        } else if (*c_sscl) {
            FiniteStructure m = load_structure(file);
            auto cert = self_sufficient_closure(m, set_or_universe(m, set_csv, sscl_set->count() > 0));
            if (json_mode || trace) {
                json j{{"input", m.names_of(cert.input)},
                       {"closure", m.names_of(cert.closure)},
                       {"minimizers_examined", cert.minimizers_examined},
                       {"dimension", cert.dimension}};
                out << j.dump() << "\n";
            } else {
                out << join_names(m.names_of(cert.closure)) << "\n";
            }
        } else if (*c_dcl) {
            FiniteStructure m = load_structure(file);
            Bits r = d_closure(m, set_or_universe(m, set_csv, dcl_set->count() > 0));
            if (json_mode)
                out << json{{"closure", m.names_of(r)}}.dump() << "\n";
            else
                out << join_names(m.names_of(r)) << "\n";
        } else if (*c_incl) {
            FiniteStructure m = load_structure(file);
            bool v = m.size() <= config().bound ? in_class_sweep(m) : in_class(m);
            if (json_mode)
                out << json{{"in_class", v}}.dump() << "\n";
            else
                out << (v ? "true" : "false") << "\n";
        } else if (*c_mat) {
            FiniteStructure m = load_structure(file);
            Matroid mat(m);
            if (mat_op == "rank") {
                out << mat.rank(set_or_universe(m, set_csv, mat_set->count() > 0)) << "\n";
            } else if (mat_op == "closure") {
                out << join_names(
                           m.names_of(mat.closure(set_or_universe(m, set_csv, mat_set->count() > 0))))
                    << "\n";
            } else if (mat_op == "geometry") {
                auto geo = associated_geometry(mat);
                out << "rank0 " << join_names(m.names_of(geo.rank_zero)) << "\n";
                for (const auto& cls : geo.classes)
                    out << "class " << join_names(m.names_of(cls)) << "\n";
            } else if (mat_op == "iso") {
                if (file2.empty()) err::raise("usage", "iso needs two structures");
                Matroid other(load_structure(file2));
                auto emb = pregeometry_isomorphic(mat, other);
                if (!emb) {
                    out << "NOT_ISOMORPHIC\n";
                } else {
                    for (const auto& [k, v] : emb->map) out << k << " -> " << v << "\n";
                }
            } else {
                err::raise("usage", "unknown matroid op '" + mat_op + "'");
            }
        } else if (*c_am) {
            FiniteStructure b1 = load_structure(file), b2 = load_structure(file2);
            emit_structure(simple_amalgam(b1, b2, split_csv(over_csv)), out_path, out);
        } else if (*c_desym) {
            FiniteStructure m = load_structure(file);
            FiniteStructure base =
                !over_file.empty()
                    ? load_structure(over_file)
                    : FiniteStructure("base", SymmetryGroup::trivial(m.arity()),
                                      desym_over->count() ? split_csv(over_csv)
                                                          : std::vector<std::string>{},
                                      {});
            emit_structure(desymmetrize(m, base).output, out_path, out);
        } else if (*c_relax) {
            FiniteStructure m = load_structure(file);
            emit_structure(relax(m, split_csv(over_csv)).output, out_path, out);
        } else if (*c_symr) {
            FiniteStructure m = load_structure(file);
            FiniteStructure base =
                !over_file.empty()
                    ? load_structure(over_file)
                    : FiniteStructure("base",
                                      group_from_spec(to_spec.empty() ? "sym" : to_spec,
                                                      m.arity()),
                                      symr_over->count() ? split_csv(over_csv)
                                                         : std::vector<std::string>{},
                                      {});
            emit_structure(relaxed_symmetrize(m, base).output, out_path, out);
        } else if (*c_iso) {
            FiniteStructure a1 = load_structure(file), a2 = load_structure(file2),
                            c = load_structure(file3);
            IsoextStep step = iso_dir == "g2ns"   ? isoext_step_g_to_ns(a1, a2, c)
                              : iso_dir == "ns2g" ? isoext_step_ns_to_g(a1, a2, c)
                                                  : throw Error("usage", "direction must be g2ns or ns2g");
            if (!out_path.empty()) {
                save_structure(step.b1, out_path + ".b1.fhs");
                save_structure(step.b2, out_path + ".b2.fhs");
            }
            out << "ok: subset-wise dimension equality verified on " << step.b1.size()
                << " points\n";
        } else if (*c_gen) {
            if (*c_gen_build) {
                SymmetryGroup g = group_from_spec(g_group, g_arity);
                GenericBuildState st = build_generic(g, g_size, g_steps, g_seed);
                int applied = 0;
                for (const auto& s : st.log) applied += s.applied;
                emit_structure(st.result(), out_path, out);
                err_stream << "applied " << applied << "/" << st.log.size() << " steps, "
                           << st.result().size() << " elements, catalog "
                           << st.catalog.size() << "\n";
            } else if (*c_gen_audit) {
                FiniteStructure m = load_structure(file);
                auto catalog = build_catalog(m.group(), g_maxC);
                out << audit_genericity(m, catalog, g_maxA, g_maxC).to_text();
            } else {
                err::raise("usage", "generic needs build or audit");
            }
        } else if (*c_exq) {
            if (exq_op == "base") {
                AtomicType q = base_exquisite_3();
                if (out_path.empty())
                    out << serialize_atomic_type(q);
                else
                    save_atomic_type(q, out_path);
            } else if (exq_op == "check") {
                AtomicType q = load_atomic_type(file);
                bool nice = check_nice(q);
                auto itw = check_intertwined(q);
                bool wosym = check_without_symmetry(q);
                if (json_mode) {
                    out << json{{"nice", nice},
                                {"intertwined", itw.ok},
                                {"without_symmetry", wosym},
                                {"exquisite", nice && itw.ok && wosym}}
                               .dump()
                        << "\n";
                } else {
                    out << (nice && itw.ok && wosym ? "exquisite" : "not-exquisite")
                        << " (nice=" << nice << " intertwined=" << itw.ok
                        << " without-symmetry=" << wosym << ")\n";
                }
            } else if (exq_op == "lift") {
                AtomicType q = lift_exquisite(load_atomic_type(file));
                if (out_path.empty())
                    out << serialize_atomic_type(q);
                else
                    save_atomic_type(q, out_path);
            } else if (exq_op == "for-arity") {
                exq_arity = std::atoi(file.c_str());
                const AtomicType& q = exquisite_for_arity(exq_arity);
                if (out_path.empty())
                    out << serialize_atomic_type(q);
                else
                    save_atomic_type(q, out_path);
            } else {
                err::raise("usage", "unknown exquisite op '" + exq_op + "'");
            }
        } else if (*c_coll) {
            FiniteStructure m = load_structure(file);
            AtomicType q = load_atomic_type(type_path);
            CollisionReport rep = collisions(m, q);
            if (json_mode)
                out << json{{"c", rep.c}, {"w", rep.w}}.dump() << "\n";
            else
                out << "c=" << rep.c << " w=" << rep.w << "\n";
        } else if (*c_dec) {
            FiniteStructure m = load_structure(file);
            AtomicType q = load_atomic_type(type_path);
            emit_structure(single_step ? decollide_step(m, q) : decollide(m, q), out_path, out);
        } else if (*c_red) {
            FiniteStructure m = load_structure(file);
            if (red_kind == "group") {
                emit_structure(phi_reduct(m, group_from_spec(to_spec, m.arity())), out_path, out);
            } else if (red_kind == "exquisite") {
                emit_structure(exquisite_reduct(m, load_atomic_type(type_path)), out_path, out);
            } else {
                err::raise("usage", "unknown reduct kind '" + red_kind + "'");
            }
        } else if (*c_mix) {
            FiniteStructure a = load_structure(file), b = load_structure(file2);
            if (mix_kind == "sub") {
                emit_structure(mixed_amalgam_subgroup(a, b), out_path, out);
            } else if (mix_kind == "exq") {
                emit_structure(mixed_amalgam_exquisite(a, b, load_atomic_type(type_path)),
                               out_path, out);
            } else {
                err::raise("usage", "unknown mixed kind '" + mix_kind + "'");
            }
        } else if (*c_ben) {
            FiniteStructure f = load_structure(file);
            std::pair<FiniteStructure, FiniteStructure> pair =
                ben_kind == "sub"
                    ? benign_pair_subgroup(f, group_from_spec(to_spec, f.arity()))
                : ben_kind == "exq"
                    ? benign_pair_exquisite(f, load_atomic_type(type_path))
                    : throw Error("usage", "unknown benign kind '" + ben_kind + "'");
            if (out_path.empty()) {
                out << serialize_structure(pair.first) << serialize_structure(pair.second);
            } else {
                save_structure(pair.first, out_path + ".a.fhs");
                save_structure(pair.second, out_path + ".b.fhs");
            }
        } else if (*c_ver) {
            suites::SuiteOptions opts{v_seed, v_count};
            std::vector<suites::SuiteResult> results;
            if (suite_name == "all") {
                for (const auto& s : suites::all_suites()) results.push_back(s.run(opts));
            } else {
                results.push_back(suites::run_suite(suite_name, opts));
            }
            bool all_ok = true;
            for (const auto& r : results) {
                all_ok = all_ok && r.passed;
                if (json_mode) {
                    out << json{{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}}
                               .dump()
                        << "\n";
                } else {
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
                    if (!r.passed && !r.counterexample.empty()) out << r.counterexample;
                }
            }
            return all_ok ? 0 : 1;
        }
        return 0;
    } catch (const Error& e) {
        err_stream << "ERROR " << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err_stream << "ERROR internal: " << e.what() << "\n";
        return 2;
    }
}

} // namespace fh::cli
