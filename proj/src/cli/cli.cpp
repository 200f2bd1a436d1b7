#include "lambertheta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "lambertheta/report_io.hpp"

namespace lambertheta::cli {

namespace {

const char* const kScalarNames[] = {"x", "y", "z", "w", "t", "s", "lambda", "mu"};

struct RawArgs {
    std::string family = "lambert";
    std::vector<std::string> pairs;
    std::string pair_b;
    std::string form;
    std::map<std::string, std::string> scalars;
    std::vector<std::string> grid;
    std::size_t count = 50;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    double rel_tol = 1e-10;
    std::string side = "both";
    std::string format = "text";
    std::string output;
    bool advisory = false;
    bool serial = false;
    std::vector<std::string> q;
    std::vector<int> ids;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

Scalar scalar_arg(const std::string& name, const std::string& text) {
    const auto v = parse_scalar(text);
    if (!v) throw UsageError("--" + name + ": cannot parse complex literal '" + text + "'");
    return *v;
}

std::vector<Scalar> scalar_list(const std::string& name, const std::string& text) {
    std::vector<Scalar> out;
    for (const auto& part : split(text, ',')) out.push_back(scalar_arg(name, part));
    if (out.empty()) throw UsageError("--" + name + ": empty list");
    return out;
}

bool is_lambda_like(const std::string& name) { return name.rfind("lambda", 0) == 0 || name == "mu"; }

void check_unit(const std::string& name, Scalar v) {
    if (is_lambda_like(name) && !(std::abs(v) < 1.0)) {
        throw UsageError("|" + (name.rfind("lambda", 0) == 0 ? std::string("lambda") : name) + "| must be < 1");
    }
}

SeriesPair resolve_pair(const std::string& name) {
    try {
        return find_pair(name);
    } catch (const Error& e) {
        constexpr std::string_view table = "table:";
        if (name.rfind(table, 0) == 0) {
            const std::filesystem::path path = name.substr(table.size());
            std::error_code ec;
            if (!std::filesystem::is_regular_file(path, ec)) throw IoError(e.what());
        }
        throw UsageError(std::string("unknown spec '") + name + "': " + e.what());
    }
}

std::vector<std::string> required_names(Family f) {
    switch (f) {
        case Family::Lambert: return {"x", "y", "z", "lambda"};
        case Family::Mehler: return {"x", "y", "z", "w", "t", "lambda"};
        case Family::Rogers: return {"x", "y", "t", "s", "lambda"};
        case Family::DoubleSum: return {"x", "y", "z", "t", "lambda", "mu"};
        case Family::Multivariate: return {"x", "y", "lambda", "z"};
    }
    return {};
}

SeriesParams empty_params(Family f) {
    switch (f) {
        case Family::Lambert: return LambertParams{};
        case Family::Mehler: return MehlerParams{};
        case Family::Rogers: return RogersParams{};
        case Family::DoubleSum: return DoubleSumParams{};
        case Family::Multivariate: return MultivariateParams{};
    }
    return LambertParams{};
}

/// Builds parameters from --x/--y/… . `covered` names grid axes, which may
/// stand in for a missing flag.
SeriesParams build_params(Family family, const RawArgs& raw, const std::vector<std::string>& covered) {
    SeriesParams p = empty_params(family);
    const auto is_covered = [&](const std::string& name) {
        for (const auto& c : covered) {
            if (c == name || (family == Family::Multivariate && c.rfind(name, 0) == 0 &&
                              c.find_first_not_of("0123456789", name.size()) == std::string::npos)) {
                return true;
            }
        }
        return false;
    };
    if (family == Family::Multivariate) {
        auto& m = std::get<MultivariateParams>(p);
        const auto list = [&](const char* name) -> std::vector<Scalar> {
            const auto it = raw.scalars.find(name);
            if (it == raw.scalars.end()) throw UsageError(std::string("missing --") + name);
            return scalar_list(name, it->second);
        };
        m.x = list("x");
        m.y = list("y");
        m.lambda = list("lambda");
        if (m.x.size() != m.y.size() || m.x.size() != m.lambda.size()) {
            throw UsageError("--x, --y and --lambda need the same number of coordinates");
        }
        for (auto v : m.lambda) check_unit("lambda", v);
        const auto z = raw.scalars.find("z");
        if (z != raw.scalars.end()) {
            m.z = scalar_arg("z", z->second);
        } else if (!is_covered("z")) {
            throw UsageError("missing --z");
        }
    } else {
        for (const auto& name : required_names(family)) {
            const auto it = raw.scalars.find(name);
            if (it == raw.scalars.end()) {
                if (is_covered(name)) continue;
                throw UsageError("missing --" + name + " for family " + to_string(family));
            }
            const Scalar v = scalar_arg(name, it->second);
            check_unit(name, v);
            set_param(p, name, v);
        }
    }
    for (const auto& [name, text] : raw.scalars) {
        const auto names = required_names(family);
        if (std::find(names.begin(), names.end(), name) == names.end()) {
            throw UsageError("--" + name + " is not a parameter of family " + std::string(to_string(family)));
        }
    }
    return p;
}

void add_common(CLI::App& app, RawArgs& raw) {
    app.add_option("--family", raw.family, "lambert | mehler | rogers | doublesum | multivariate");
    app.add_option("--pair,--spec", raw.pairs, "coefficient/generating-function pair name (repeatable for sweep)");
    app.add_option("--pair-b,--spec-b", raw.pair_b, "second pair for the rogers family");
    app.add_option("--form", raw.form, "generating function name; must match the spec");
    for (const char* name : kScalarNames) {
        app.add_option(std::string("--") + name, raw.scalars[name], std::string("parameter ") + name)
            ->type_name("COMPLEX");
    }
    app.add_option("--tol", raw.tol, "report tolerance on rel_gap (default 100 x rel-tol)");
    app.add_option("--rel-tol", raw.rel_tol, "evaluator relative tolerance");
    app.add_flag("--advisory", raw.advisory, "evaluate outside |y|<|x|-type hypotheses and flag the report");
    app.add_option("--format", raw.format, "text | json | csv");
    app.add_option("--output,-o", raw.output, "write the report to a file");
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Generalized Lambert series: evaluate and verify the theta-operator identities", "lambertheta"};
    app.require_subcommand(1);
    RawArgs raw;

    auto* eval = app.add_subcommand("eval", "evaluate one side (or both) of a series");
    auto* verify = app.add_subcommand("verify", "compare both sides of an identity at one point");
    auto* sweep_cmd = app.add_subcommand("sweep", "verify over a grid or a seeded random cloud");
    auto* classical = app.add_subcommand("classical", "classical Lambert-series identities 1..5");

    for (auto* sub : {eval, verify, sweep_cmd}) add_common(*sub, raw);
    eval->add_option("--side", raw.side, "lhs | rhs | both");
    sweep_cmd->add_option("--grid", raw.grid, "NAME=v1,v2,... axis (repeatable)");
    sweep_cmd->add_option("--count", raw.count, "random draws per pair");
    sweep_cmd->add_option("--seed", raw.seed, "seed for random draws");
    sweep_cmd->add_flag("--serial", raw.serial, "run the serial reference sweep");
    classical->add_option("--q", raw.q, "q values (comma list or repeated)")->delimiter(',');
    classical->add_option("--id", raw.ids, "identity ids 1..5 (default all)")->delimiter(',');
    classical->add_option("--tol", raw.tol, "tolerance on rel_gap (default 1e-9)");
    classical->add_option("--format", raw.format, "text | json | csv");
    classical->add_option("--output,-o", raw.output, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        throw HelpRequested{};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    // Options registered with a map slot default to "", so drop unset ones.
    for (auto it = raw.scalars.begin(); it != raw.scalars.end();) {
        it = it->second.empty() ? raw.scalars.erase(it) : std::next(it);
    }

    RunConfig cfg;
    if (eval->parsed()) cfg.command = Command::Eval;
    if (verify->parsed()) cfg.command = Command::Verify;
    if (sweep_cmd->parsed()) cfg.command = Command::Sweep;
    if (classical->parsed()) cfg.command = Command::Classical;

    if (raw.format == "text") {
        cfg.format = OutputFormat::Text;
    } else if (raw.format == "json") {
        cfg.format = OutputFormat::Json;
    } else if (raw.format == "csv") {
        cfg.format = OutputFormat::Csv;
    } else {
        throw UsageError("--format must be text, json or csv");
    }
    if (!raw.output.empty()) cfg.output = raw.output;

    if (!(raw.rel_tol > 0.0)) throw UsageError("--rel-tol must be > 0");
    cfg.check.eval.rel_tol = raw.rel_tol;
    if (const char* env = std::getenv("LAMBERTHETA_MAX_TERMS"); env && *env) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (*end != '\0' || v < 1) throw UsageError("LAMBERTHETA_MAX_TERMS must be a positive integer");
        cfg.check.eval.max_terms = v;
    }
    cfg.check.mode = raw.advisory ? DomainMode::Advisory : DomainMode::Strict;

    if (cfg.command == Command::Classical) {
        cfg.check.tol = raw.tol.value_or(1e-9);
        if (!(cfg.check.tol > 0.0)) throw UsageError("--tol must be > 0");
        for (const auto& q : raw.q) {
            const Scalar v = scalar_arg("q", q);
            if (!(std::abs(v) < 1.0)) throw UsageError("|q| must be < 1");
            cfg.q_values.push_back(v);
        }
        if (cfg.q_values.empty()) cfg.q_values = {0.05, 0.1, 0.3, 0.5, 0.7};
        for (int id : raw.ids) {
            if (id < 1 || id > kClassicalCount) throw UsageError("--id must be in 1..5");
        }
        cfg.classical_ids = raw.ids;
        if (cfg.classical_ids.empty()) cfg.classical_ids = {1, 2, 3, 4, 5};
        return cfg;
    }

    cfg.check.tol = raw.tol.value_or(default_report_tol(cfg.check.eval));
    if (!(cfg.check.tol > 0.0)) throw UsageError("--tol must be > 0");

    const auto family = parse_family(raw.family);
    if (!family) throw UsageError("unknown family '" + raw.family + "'");
    cfg.family = *family;

    for (const auto& name : raw.pairs) cfg.pairs.push_back(resolve_pair(name));
    if (cfg.pairs.empty()) {
        if (cfg.command != Command::Sweep) throw UsageError("--pair is required");
        cfg.pairs = standard_pairs();
    }
    if (!raw.form.empty()) {
        const auto form = resolve_pair(raw.form).form;
        if (!(form == cfg.pairs.front().form)) {
            throw UsageError("spec '" + cfg.pairs.front().name + "' is not paired with form '" + raw.form + "'");
        }
    }
    if (!raw.pair_b.empty()) cfg.pair_b = resolve_pair(raw.pair_b);

    if (raw.side == "lhs") {
        cfg.side = Side::Lhs;
    } else if (raw.side == "rhs") {
        cfg.side = Side::Rhs;
    } else if (raw.side == "both") {
        cfg.side = Side::Both;
    } else {
        throw UsageError("--side must be lhs, rhs or both");
    }

    std::vector<std::string> covered;
    for (const auto& axis : raw.grid) {
        const auto eq = axis.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--grid expects NAME=v1,v2,...");
        const std::string name = axis.substr(0, eq);
        const std::string values = axis.substr(eq + 1);
        auto list = values.empty() ? std::vector<Scalar>{} : scalar_list(name, values);
        for (auto v : list) check_unit(name, v);
        covered.push_back(name);
        cfg.grid.emplace_back(name, std::move(list));
    }

    if (cfg.command == Command::Sweep) {
        cfg.count = raw.count;
        cfg.seed = raw.seed;
        cfg.serial = raw.serial;
        if (!cfg.grid.empty()) cfg.params = build_params(cfg.family, raw, covered);
    } else {
        if (!raw.grid.empty()) throw UsageError("--grid is only valid for sweep");
        cfg.params = build_params(cfg.family, raw, {});
    }
    return cfg;
}

namespace {

int write_output(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
    if (!cfg.output) {
        out << text;
        out.flush();
        return kExitOk;
    }
    std::ofstream file(*cfg.output, std::ios::binary);
    if (file) file << text;
    if (!file) {
        err << "error: cannot write " << *cfg.output << "\n";
        return kExitIo;
    }
    return kExitOk;
}

std::string render(const std::vector<IdentityReport>& reports, OutputFormat fmt, bool with_summary) {
    switch (fmt) {
        case OutputFormat::Json: return reports_to_json(reports);
        case OutputFormat::Csv: return reports_to_csv(reports);
        case OutputFormat::Text: break;
    }
    std::string out;
    for (const auto& r : reports) out += report_to_text(r) + "\n";
    if (with_summary) {
        const auto s = summarize(reports);
        out += "summary: " + std::to_string(s.pass) + " PASS, " + std::to_string(s.fail) + " FAIL, " +
               std::to_string(s.skipped) + " SKIPPED\n";
    }
    return out;
}

int verdict_exit(const std::vector<IdentityReport>& reports) {
    const auto s = summarize(reports);
    if (s.fail > 0) return kExitFail;
    if (s.pass == 0 && s.skipped > 0) return kExitSkipped;
    return kExitOk;
}

int combine(int verdict_code, int io_code) { return io_code != kExitOk ? io_code : verdict_code; }

int run_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& pair = cfg.pairs.front();
    const SeriesPair& second = cfg.pair_b ? *cfg.pair_b : pair;
    const SeriesParams& params = *cfg.params;

    const auto violations = validate_domain(params, radii_of(pair.form, &second.form), cfg.check.eval);
    std::vector<std::string> flags;
    for (const auto& v : violations) {
        if (cfg.check.mode == DomainMode::Strict || !v.relaxable) {
            err << "error: " << v.what << "\n";
            return kExitFail;
        }
        flags.push_back(v.what);
    }

    struct Outcome {
        const char* side;
        std::optional<EvalResult> result;
        std::string error;
    };
    std::vector<Outcome> outcomes;
    auto attempt = [&](const char* side, auto&& fn) {
        Outcome o{side, std::nullopt, {}};
        try {
            o.result = fn();
        } catch (const Error& e) {
            o.error = e.what();
            if (e.partial()) o.result = e.partial();
        }
        outcomes.push_back(std::move(o));
    };
    if (cfg.side != Side::Rhs) {
        attempt("lhs", [&] { return eval_lhs(params, pair.spec, &second.spec, cfg.check.eval); });
    }
    if (cfg.side != Side::Lhs) {
        attempt("rhs", [&] { return eval_rhs(params, pair.form, &second.form, cfg.check.eval); });
    }

    bool ok = true;
    for (const auto& o : outcomes) ok = ok && o.error.empty() && o.result && o.result->converged;

    std::string text;
    const auto params_list = named_params(params);
    if (cfg.format == OutputFormat::Json) {
        nlohmann::ordered_json j;
        j["family"] = to_string(cfg.family);
        j["spec"] = pair.name;
        j["form"] = pair.form.label();
        for (const auto& [n, v] : params_list) j["params"][n] = {v.real(), v.imag()};
        for (const auto& o : outcomes) {
            if (!o.result) {
                j[o.side] = nullptr;
            } else {
                j[o.side] = {{"value", {o.result->value.real(), o.result->value.imag()}},
                             {"terms", o.result->terms_used},
                             {"tail", o.result->tail_estimate},
                             {"converged", o.result->converged}};
            }
            if (!o.error.empty()) j[std::string(o.side) + "_error"] = o.error;
        }
        j["flags"] = flags;
        text = j.dump() + "\n";
    } else if (cfg.format == OutputFormat::Csv) {
        text = "side,re,im,terms,tail,converged,error\n";
        for (const auto& o : outcomes) {
            char buf[160] = "";
            if (o.result) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld,%.17g,%s", o.result->value.real(),
                              o.result->value.imag(), static_cast<long long>(o.result->terms_used),
                              o.result->tail_estimate, o.result->converged ? "true" : "false");
            } else {
                std::snprintf(buf, sizeof buf, ",,,,");
            }
            text += std::string(o.side) + "," + buf + ",\"" + o.error + "\"\n";
        }
    } else {
        for (const auto& o : outcomes) {
            text += std::string(o.side) + " = ";
            if (o.result) {
                char buf[120];
                std::snprintf(buf, sizeof buf, "  (terms %lld, tail %.3g%s)",
                              static_cast<long long>(o.result->terms_used), o.result->tail_estimate,
                              o.result->converged ? "" : ", not converged");
                text += format_scalar(o.result->value) + buf;
            } else {
                text += "n/a";
            }
            if (!o.error.empty()) text += "  [" + o.error + "]";
            text += "\n";
        }
        for (const auto& f : flags) text += "note: " + f + " (" + kOutsideHypotheses + ")\n";
    }
    return combine(ok ? kExitOk : kExitFail, write_output(cfg, text, out, err));
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::Eval: return run_eval(cfg, out, err);
            case Command::Verify: {
                const auto& pair = cfg.pairs.front();
                const SeriesPair* second = cfg.pair_b ? &*cfg.pair_b : nullptr;
                const std::vector<IdentityReport> reports{check_identity(*cfg.params, pair, second, cfg.check)};
                return combine(verdict_exit(reports), write_output(cfg, render(reports, cfg.format, false), out, err));
            }
            case Command::Sweep: {
                PointSource source = RandomCloud{cfg.count, cfg.seed};
                if (!cfg.grid.empty()) source = ParameterGrid{*cfg.params, cfg.grid};
                auto pairs = cfg.pairs;
                // An explicit second pair makes the Rogers sweep use exactly (pair, pair-b).
                if (cfg.family == Family::Rogers && cfg.pair_b && pairs.size() == 1) pairs.push_back(*cfg.pair_b);
                auto plan = plan_sweep(cfg.family, pairs, source, cfg.check.eval);
                if (cfg.family == Family::Rogers && cfg.pair_b && cfg.pairs.size() == 1) {
                    std::erase_if(plan.points, [](const SweepPoint& p) { return p.pair_a != 0; });
                }
                const auto reports =
                    cfg.serial ? run_sweep_serial(plan, cfg.check) : run_sweep_parallel(plan, cfg.check);
                const int io = write_output(cfg, render(reports, cfg.format, true), out, err);
                if (cfg.output && io == kExitOk && cfg.format != OutputFormat::Text) {
                    const auto s = summarize(reports);
                    out << "summary: " << s.pass << " PASS, " << s.fail << " FAIL, " << s.skipped << " SKIPPED\n";
                }
                return combine(verdict_exit(reports), io);
            }
            case Command::Classical: {
                std::vector<IdentityReport> reports;
                for (auto q : cfg.q_values) {
                    for (int id : cfg.classical_ids) reports.push_back(check_classical(id, q, cfg.check.tol));
                }
                return combine(verdict_exit(reports), write_output(cfg, render(reports, cfg.format, false), out, err));
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::EmptyGrid || e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitFail;
    }
    return kExitFail;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run(parse_args(argc, argv, out), out, err);
    } catch (const HelpRequested&) {
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace lambertheta::cli
