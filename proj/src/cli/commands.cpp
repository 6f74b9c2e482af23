#include "qrea/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qrea/braid.hpp"
#include "qrea/classify.hpp"
#include "qrea/rea.hpp"
#include "qrea/reps.hpp"
#include "qrea/shapes.hpp"

namespace qrea::cli {

namespace {

using nlohmann::json;

json signature_json(const Signature& s) { return {{"plus", s.n_plus}, {"minus", s.n_minus}, {"zero", s.n_zero}}; }

json pair_json(const IndexPair& p) { return {{"I", p.I}, {"J", p.J}}; }

void check_config(const RunConfig& cfg) {
    if (!(cfg.q0 > 0.0 && cfg.q0 < 1.0)) throw InputError("q must lie in (0,1)");
    if (!(cfg.tol > 0.0)) throw InputError("tol must be positive");
    if (cfg.dim < 2) throw InputError("dim must be at least 2");
}

// One entry of a verification report.
struct Check {
    std::string id;
    std::size_t instances = 0;
    double max_residual = 0.0;
    std::string witness;
    bool pass = true;

    json to_json() const {
        json j = {{"id", id}, {"instances", instances}, {"max_residual", max_residual}, {"pass", pass}};
        if (!witness.empty()) j["witness"] = witness;
        return j;
    }
};

Check from_identity(const IdentityReport& r) {
    Check c;
    c.id = r.id;
    c.instances = r.instances;
    c.pass = r.pass();
    c.max_residual = c.pass ? 0.0 : 1.0;
    if (!c.pass) c.witness = r.failures.front().witness + ": " + r.failures.front().residual;
    return c;
}

// Accumulates numeric residuals under one id.
struct NumericCheck {
    Check c;
    double tol;

    NumericCheck(std::string id, double t) : tol(t) { c.id = std::move(id); }
    void add(double residual, const std::string& where, std::size_t count = 1) {
        c.instances += count;
        if (residual > c.max_residual || std::isnan(residual)) {
            c.max_residual = residual;
            if (!(residual <= tol)) c.witness = where;
        }
        if (!(residual <= tol)) c.pass = false;
    }
};

double rel_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
    return m;
}

std::vector<CharacterParams> sample_characters(int N) {
    std::vector<CharacterParams> out;
    for (int l = 0; 2 * l <= N; ++l)
        for (int k = 0; k + 2 * l <= N; ++k) out.push_back({N, k, l, 1.3, -0.7, std::vector<double>(static_cast<std::size_t>(l), 0.4)});
    return out;
}

std::string character_label(const CharacterParams& p) {
    std::ostringstream os;
    os << "character N=" << p.n << " k=" << p.k << " l=" << p.l;
    return os.str();
}

std::vector<Check> verify_reps(const RunConfig& cfg) {
    const int N = cfg.n;
    NumericCheck re("reflection-equation", cfg.tol), herm("hermiticity", cfg.tol), hc("harish-chandra", cfg.tol),
        qc("qcomm", cfg.tol), inv("central-coinvariance", cfg.tol), lim("uq-limit", std::min(cfg.tol, 1e-10));
    for (const auto& p : sample_characters(N)) {
        auto g = character_rep(p, cfg.q0);
        re.add(re_residual(g), character_label(p));
        herm.add(hermiticity_defect(g), character_label(p));
        if (N >= 2) {
            auto a = apply_alpha(g, 1, cfg.dim);
            const std::string where = character_label(p) + " alpha_1";
            re.add(re_residual(a), where);
            herm.add(hermiticity_defect(a), where);
            const auto base = central_values(g, cfg.seed).values;
            inv.add(rel_gap(central_values(a, cfg.seed).values, base), where);
            lim.add(rel_gap(central_values(uq_limit(a), cfg.seed).values, base), where + " uq limit");
        }
    }
    // adapted weights with all-positive eps: r = 0 and one integer step
    std::vector<std::vector<double>> weights = {std::vector<double>(static_cast<std::size_t>(N), 0.0)};
    if (N >= 2) {
        std::vector<double> r(static_cast<std::size_t>(N), 0.0);
        r.back() = 1.0;
        weights.push_back(r);
    }
    const int cutoff = std::max(2 * N - 2, std::min(cfg.dim, 6));
    for (const auto& r : weights) {
        std::vector<int> eps(static_cast<std::size_t>(N), 1);
        auto g = verma_big_cell(eps, r, cutoff, cfg.q0);
        std::ostringstream os;
        os << "verma r=(";
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << ")";
        re.add(re_residual(g), os.str());
        herm.add(hermiticity_defect(g), os.str());
        hc.add(rel_gap(central_values(g, cfg.seed).values, central_from_weight(eps, r, cfg.q0).values), os.str());
        auto rc = verify_in_rep("qcomm", g, detect_shape(g).shape, Mat());
        qc.add(rc.max_residual, os.str() + (rc.worst.empty() ? "" : " " + rc.worst), rc.instances);
    }
    std::vector<Check> out{re.c, herm.c, hc.c, qc.c};
    if (N >= 2) {
        out.push_back(inv.c);
        out.push_back(lim.c);
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace

CommandResult cmd_verify(const RunConfig& cfg) {
    check_config(cfg);
    std::vector<Check> checks;
    if (cfg.suite == "braid") {
        if (cfg.n < 1 || cfg.n > 4) throw InputError("braid suite supports 1 <= n <= 4");
        for (const char* id : {"braid", "hecke", "selfadjoint", "coeff-support", "coeff-diagonal", "coeff-inverse"})
            checks.push_back(from_identity(verify_braid(id, cfg.n)));
    } else if (cfg.suite == "rea") {
        if (cfg.n < 1 || cfg.n > 3) throw InputError("rea suite supports 1 <= n <= 3");
        VerifyParams exhaustive, sampled;
        sampled.samples = cfg.n >= 3 ? 60 : 0;
        sampled.seed = cfg.seed;
        for (const char* id : {"centrality", "qdet-sigma", "laplace-agreement"})
            checks.push_back(from_identity(verify_identity(id, cfg.n, exhaustive)));
        if (cfg.n >= 2)
            for (const char* id : {"muir-1", "muir-2", "general-comm"})
                checks.push_back(from_identity(verify_identity(id, cfg.n, sampled)));
    } else if (cfg.suite == "reps") {
        if (cfg.n < 1 || cfg.n > 3) throw InputError("reps suite supports 1 <= n <= 3");
        checks = verify_reps(cfg);
    } else {
        throw InputError("unknown suite '" + cfg.suite + "' (braid, rea, reps)");
    }
    CommandResult res;
    json arr = json::array();
    bool pass = true;
    for (const auto& c : checks) {
        arr.push_back(c.to_json());
        pass = pass && c.pass;
    }
    res.report = {{"command", "verify"}, {"suite", cfg.suite}, {"n", cfg.n}, {"q", cfg.q0},
                  {"tol", cfg.tol},      {"seed", cfg.seed},   {"checks", arr}, {"pass", pass}};
    res.exit_code = pass ? kPass : kFail;
    return res;
}

CommandResult cmd_build(const RunConfig& cfg, const json& spec) {
    check_config(cfg);
    OperatorGrid rep;
    try {
        rep = build_from_spec(spec);
    } catch (const json::exception& e) {
        throw InputError(std::string("chain spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("chain spec: ") + e.what());
    } catch (const RepError& e) {
        throw InputError(std::string("chain spec: ") + e.what());
    }
    json report = {{"command", "build"}, {"spec", spec}, {"n", rep.n}, {"q", rep.q0}, {"dim", rep.dim}, {"seed", cfg.seed}};

    auto det = detect_shape(rep);
    report["shape"] = shape_to_json(det.shape);
    report["shape_text"] = det.shape.str();
    report["signature"] = signature_json(signature(det.shape));
    json leading = json::array();
    for (std::size_t k = 0; k < det.leading.size(); ++k)
        leading.push_back({{"minor", pair_json(det.leading[k])}, {"norm", det.norms[k]}});
    report["leading_minors"] = leading;

    auto cv = central_values(rep, cfg.seed);
    report["central"] = cv.values;
    report["central_scalar_defect"] = cv.scalar_defect;

    const double re = re_residual(rep), herm = hermiticity_defect(rep);
    report["residuals"] = {{"reflection_equation", re}, {"hermiticity", herm}, {"tol", cfg.tol}};

    auto idx = rep.interior(rep.n);
    if (idx.empty()) {
        report["weight"] = {{"error", "no basis vectors exact to the required degree"}};
    } else {
        Mat W = Mat::Zero(rep.dim, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t c = 0; c < idx.size(); ++c) W(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
        try {
            auto wr = weight_analysis(rep, det.shape, W);
            json ops = json::array();
            for (const auto& p : wr.operators) ops.push_back(pair_json(p));
            report["weight"] = {{"operators", ops},
                                {"highest_weight", wr.hw},
                                {"multiplicity", wr.hw_multiplicity},
                                {"residual", wr.eigen_residual}};
        } catch (const std::exception& e) {
            report["weight"] = {{"error", e.what()}};
        }
    }
    try {
        auto d = weight_from_central(CentralCharacter{cv.values}, shape_sign_pattern(det.shape), rep.q0);
        report["big_cell_weight"] = {{"eps", d.weight.eps}, {"r", d.weight.r}, {"adapted", is_epsilon_adapted(d.weight.eps, d.weight.r, 1e-6)}};
    } catch (const std::exception& e) {
        report["big_cell_weight"] = {{"error", e.what()}};
    }

    // Split of the last coaction step into its two branches.
    if (spec.contains("chain") && !spec["chain"].empty() && spec["chain"].back().contains("alpha")) {
        json prev_spec = spec;
        prev_spec["chain"].erase(prev_spec["chain"].size() - 1);
        const int i = spec["chain"].back()["alpha"].get<int>();
        auto prev = build_from_spec(prev_spec);
        Shape S = detect_shape(prev).shape;
        if (alpha_transform(S, i).size() == 2) {
            int m = 0;
            for (int j = 1; j <= S.rank(); ++j)
                if (S.leading(j).back() == i) m = j;
            auto sb = split_blocks(rep, S.leading(m), Mat(), 40);
            json branches = json::array();
            for (const auto* B : {&sb.plus, &sb.minus}) {
                if (B->cols() == 0) continue;
                const auto& eigs = B == &sb.plus ? sb.plus_eigs : sb.minus_eigs;
                Shape T = detect_shape(rep, B->leftCols(std::min<Eigen::Index>(6, B->cols()))).shape;
                branches.push_back({{"sign", B == &sb.plus ? 1 : -1},
                                    {"shape", shape_to_json(T)},
                                    {"shape_text", T.str()},
                                    {"leading_eigenvalue", eigs.empty() ? 0.0 : eigs.front()}});
            }
            json split = {{"alpha", i}, {"minor", S.leading(m)}, {"branches", branches}};
            if (prev.dim == 1) {
                auto val = [&](const IndexSet& I) { return I.empty() ? 1.0 : Mat(minor_op(prev, I, I))(0, 0).real(); };
                auto roots = split_weights(val(S.image(S.leading(m))), val(S.leading(m + 1)), val(S.leading(m - 1)), rep.q0);
                split["predicted_roots"] = {roots.first, roots.second};
            }
            report["split"] = split;
        }
    }

    const bool pass = re <= cfg.tol && herm <= cfg.tol;
    report["pass"] = pass;
    return {pass ? kPass : kFail, report};
}

CommandResult cmd_classify(const RunConfig& cfg, const json& input) {
    check_config(cfg);
    if (cfg.enumerate) {
        const int rank = cfg.rank < 0 ? cfg.n : cfg.rank;
        if (cfg.n < 1 || cfg.n > 6) throw InputError("enumerate supports 1 <= n <= 6");
        if (rank < 0 || rank > cfg.n) throw InputError("rank must lie in 0..n");
        auto labels = enumerate_labels(cfg.n, rank, cfg.limit, cfg.q0);
        json arr = json::array();
        std::map<std::string, std::size_t> families;
        std::set<std::pair<int, int>> character_families;
        bool pass = true;
        for (const auto& L : labels) {
            auto v = validate_label(L.shape, L.central, cfg.q0);
            json j = label_to_json(L);
            j["signature"] = signature_json(signature(L.shape));
            j["valid"] = v.valid;
            pass = pass && v.valid;
            arr.push_back(j);
            std::ostringstream os;
            os << "tau=(";
            for (int t = 0; t < L.shape.n; ++t) os << (t ? "," : "") << L.shape.tau[static_cast<std::size_t>(t)];
            os << ")";
            ++families[os.str()];
            for (int l = 0; 2 * l <= cfg.n; ++l)
                for (int k = 0; k + 2 * l <= cfg.n; ++k)
                    for (int c : {1, -1})
                        if (equal_up_to_cycle_phases(L.shape, character_shape(cfg.n, k, l, c)))
                            character_families.insert({k, l});
        }
        json chars = json::array();
        for (const auto& [k, l] : character_families) chars.push_back({{"k", k}, {"l", l}});
        json report = {{"command", "classify"}, {"mode", "enumerate"}, {"n", cfg.n}, {"rank", rank}, {"q", cfg.q0},
                       {"count", labels.size()}, {"families", families}, {"character_families", chars}, {"labels", arr}, {"pass", pass}};
        return {pass ? kPass : kFail, report};
    }
    Label L;
    try {
        L = label_from_json(input);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (!L.shape.is_self_adjoint()) throw InputError("shape is not self-adjoint; shapes of representations always are");
    if (static_cast<int>(L.central.values.size()) != L.shape.n) throw InputError("central character length differs from n");
    auto v = validate_label(L.shape, L.central, cfg.q0);
    json report = {{"command", "classify"}, {"mode", "validate"}, {"q", cfg.q0}, {"label", label_to_json(L)},
                   {"valid", v.valid}, {"reason", v.reason}, {"signature", signature_json(signature(L.shape))}};
    if (v.weight) report["weight"] = {{"eps", v.weight->eps}, {"r", v.weight->r}};
    auto red = reduce_to_big_cell(L.shape);
    json word = json::array();
    for (const auto& s : red.word) word.push_back({{"alpha", s.k}, {"split", s.split}, {"chosen_sign", s.chosen_sign}});
    report["coaction_word"] = word;
    report["big_cell"] = shape_to_json(red.big_cell);
    return {v.valid ? kPass : kFail, report};
}

int run(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Reflection equation algebra toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--n", cfg.n, "matrix size N");
    app.add_option("--q", cfg.q0, "deformation parameter in (0,1)");
    app.add_option("--tol", cfg.tol, "numeric tolerance");
    app.add_option("--dim", cfg.dim, "truncation of each s-factor");
    app.add_option("--seed", cfg.seed, "seed for sampled checks");
    app.add_option("--in", cfg.in, "input JSON file");
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--suite", cfg.suite, "verify suite: braid, rea, reps");
    app.add_flag("--enumerate", cfg.enumerate, "enumerate labels instead of validating one");
    app.add_option("--rank", cfg.rank, "rank of enumerated shapes (default n)");
    app.add_option("--limit", cfg.limit, "maximum number of enumerated labels");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    auto* build = app.add_subcommand("build", "build a representation from a chain spec and report on it");
    auto* classify = app.add_subcommand("classify", "validate or enumerate classification labels");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    }

    CommandResult res;
    try {
        if (verify->parsed()) {
            cfg.command = "verify";
            if (cfg.suite.empty()) throw InputError("verify needs --suite");
            res = cmd_verify(cfg);
        } else if (build->parsed()) {
            cfg.command = "build";
            if (cfg.in.empty()) throw InputError("build needs --in SPEC");
            res = cmd_build(cfg, read_json_file(cfg.in));
        } else if (classify->parsed()) {
            cfg.command = "classify";
            json input;
            if (!cfg.enumerate) {
                if (cfg.in.empty()) throw InputError("classify needs --in LABEL or --enumerate");
                input = read_json_file(cfg.in);
            }
            res = cmd_classify(cfg, input);
        }
    } catch (const InputError& e) {
        res = {kInputError, {{"command", cfg.command}, {"error", e.what()}}};
    } catch (const std::exception& e) {
        res = {kInputError, {{"command", cfg.command}, {"error", std::string("internal: ") + e.what()}}};
    }

    const std::string text = res.report.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "cannot write " << cfg.out << "\n";
            return kInputError;
        }
        f << text;
    }
    if (res.exit_code != kPass && res.report.contains("error")) std::cerr << res.report["error"].get<std::string>() << "\n";
    return res.exit_code;
}

}  // namespace qrea::cli
