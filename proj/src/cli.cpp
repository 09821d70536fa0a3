#include "tsnake/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tsnake/emit.hpp"
#include "tsnake/parse.hpp"

namespace tsnake {

namespace {

namespace fs = std::filesystem;

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + tok + "'");
        }
        while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
        if (used != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

InputKind kind_from(const std::string& s) {
    if (s == "12") return InputKind::Bracket12;
    if (s == "23") return InputKind::Bracket23;
    if (s == "13") return InputKind::Bracket13;
    throw std::invalid_argument("unknown bracket kind: " + s);
}

std::vector<InputKind> kinds_from(const std::string& s) {
    if (s == "all") return {InputKind::Bracket12, InputKind::Bracket23, InputKind::Bracket13};
    return {kind_from(s)};
}

std::string pair_digits(InputKind kind) {
    const auto [i, j] = bracket_pair(kind);
    return std::to_string(i) + std::to_string(j);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

ControlInput make_input(InputKind kind, double amplitude, double omega) {
    return amplitude == 0.0 ? zero_input(kind, omega) : periodic_input(kind, amplitude, omega);
}

nlohmann::json flag_error_json(const NotBracketGenerating& e) {
    return {{"error",
             {{"kind", "not-bracket-generating"},
              {"message", e.what()},
              {"growth_vector", e.dims()},
              {"depth", e.depth()}}}};
}

nlohmann::json frame_error_json(const RankDeficientFrame& e) {
    return {{"error",
             {{"kind", "rank-deficient-frame"},
              {"message", e.what()},
              {"achieved_rank", e.achieved_rank()}}}};
}

/// Runs `fn(model, analysis)`; singular points become structured errors
/// whose exit code depends on --strict.
template <typename Fn>
int with_analysis(const RunConfig& cfg, std::ostream& out, Fn&& fn) {
    const Model model = resolve_model(cfg.model);
    try {
        const Analysis a = analyze_at(model.fields, cfg.point);
        return fn(model, a);
    } catch (const NotBracketGenerating& e) {
        out << flag_error_json(e).dump(2) << '\n';
    } catch (const RankDeficientFrame& e) {
        out << frame_error_json(e).dump(2) << '\n';
    }
    return cfg.strict ? kExitStrictFailure : kExitOk;
}

int cmd_model(const RunConfig& cfg, std::ostream& out) {
    const Model model = resolve_model(cfg.model);
    for (int i = 0; i < 3; ++i)
        out << 'g' << (i + 1) << " = " << model.fields[i].to_string() << '\n';
    return kExitOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    return with_analysis(cfg, out, [&](const Model& model, const Analysis& a) {
        out << analysis_json(model, cfg.point, a).dump(2) << '\n';
        return cfg.strict && !a.all_pass ? kExitStrictFailure : kExitOk;
    });
}

int cmd_bracket(const RunConfig& cfg, const std::vector<InputKind>& kinds, std::ostream& out) {
    const Model model = resolve_model(cfg.model);
    nlohmann::json arr = nlohmann::json::array();
    for (InputKind kind : kinds) {
        const BracketDisplacement d =
            bracket_displacement(model.fields, kind, cfg.amplitude, cfg.omega, cfg.steps, cfg.point);
        const Vec6 predicted = M_PI * cfg.amplitude * cfg.amplitude *
                               bracket_field(model.fields, kind).evaluate(cfg.point);
        arr.push_back({{"kind", input_kind_name(kind)},
                       {"endpoint", vec_json(d.endpoint)},
                       {"displacement", vec_json(d.displacement)},
                       {"direction_cosine", d.direction_cosine},
                       {"magnitude", d.magnitude},
                       {"predicted", vec_json(predicted)}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, InputKind kind, std::ostream& out) {
    const Model model = resolve_model(cfg.model);
    const ControlInput input = make_input(kind, cfg.amplitude, cfg.omega);
    Trajectory traj = integrate(model.fields, input, cfg.point,
                                cfg.periods * input.period(), cfg.periods * cfg.steps);
    traj.model = "exact";

    fs::create_directories(cfg.out_dir);
    const fs::path base = fs::path(cfg.out_dir) / ("sim_" + pair_digits(kind));
    std::vector<std::string> files;
    if (cfg.emit != "svg") {
        std::ostringstream csv;
        write_trajectory_csv(csv, traj);
        write_file(base.string() + ".csv", csv.str());
        files.push_back(base.string() + ".csv");

        std::ostringstream kin;
        write_kinematics_csv(kin, traj, model.par);
        write_file(base.string() + "_kin.csv", kin.str());
        files.push_back(base.string() + "_kin.csv");
    }
    if (cfg.emit != "csv") {
        const auto paths = pose_paths(traj, model.par, "#1f77b4", false);
        write_file(base.string() + ".svg", render_svg(paths));
        files.push_back(base.string() + ".svg");
    }
    out << nlohmann::json{{"files", files}, {"endpoint", vec_json(traj.endpoint())}}.dump(2)
        << '\n';
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, InputKind kind, std::ostream& out) {
    return with_analysis(cfg, out, [&](const Model& model, const Analysis& a) {
        const ComparisonReport rep = compare(model.fields, a.hat_fields_x, kind, cfg.amplitude,
                                             cfg.omega, cfg.steps, model.par, cfg.point);

        fs::create_directories(cfg.out_dir);
        const fs::path base = fs::path(cfg.out_dir) / ("compare_" + pair_digits(kind));
        const nlohmann::json j = comparison_json(rep);
        write_file(base.string() + ".json", j.dump(2) + "\n");
        if (cfg.emit != "svg") {
            std::ostringstream csv;
            write_compare_csv(csv, rep.exact, rep.nilpotent);
            write_file(base.string() + ".csv", csv.str());
        }
        if (cfg.emit != "csv") {
            auto paths = pose_paths(rep.exact, model.par, "#1f77b4", false);
            const auto hat_paths = pose_paths(rep.nilpotent, model.par, "#d62728", true);
            paths.insert(paths.end(), hat_paths.begin(), hat_paths.end());
            write_file(base.string() + ".svg", render_svg(paths));
        }
        out << j.dump(2) << '\n';
        return cfg.strict && !a.all_pass ? kExitStrictFailure : kExitOk;
    });
}

int cmd_sweep(const RunConfig& cfg, const std::vector<InputKind>& kinds,
              const std::vector<double>& amplitudes, std::ostream& out) {
    return with_analysis(cfg, out, [&](const Model& model, const Analysis& a) {
        std::ostringstream csv;
        csv << "kind,amplitude,magnitude,max_dev,endpoint_dev,rel_endpoint_dev,"
               "direction_cosine,max_slip\n";
        for (InputKind kind : kinds) {
            for (double amp : amplitudes) {
                const ComparisonReport rep = compare(model.fields, a.hat_fields_x, kind, amp,
                                                     cfg.omega, cfg.steps, model.par, cfg.point);
                const double rel =
                    rep.magnitude > 0.0 ? rep.endpoint_dev / rep.magnitude : 0.0;
                csv << input_kind_name(kind) << ',' << format_sig(amp) << ','
                    << format_sig(rep.magnitude) << ',' << format_sig(rep.max_dev) << ','
                    << format_sig(rep.endpoint_dev) << ',' << format_sig(rel) << ','
                    << format_sig(rep.direction_cosine) << ',' << format_sig(rep.max_slip)
                    << '\n';
            }
        }
        fs::create_directories(cfg.out_dir);
        write_file(fs::path(cfg.out_dir) / "sweep.csv", csv.str());
        out << csv.str();
        return cfg.strict && !a.all_pass ? kExitStrictFailure : kExitOk;
    });
}

}  // namespace

void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "model") {
                cfg.model = value.get<std::string>();
            } else if (key == "point") {
                if (!value.is_array() || value.size() != kDim)
                    throw std::invalid_argument("point must be an array of 6 numbers");
                for (int k = 0; k < kDim; ++k) cfg.point[k] = value[k].get<double>();
            } else if (key == "amplitude") {
                cfg.amplitude = value.get<double>();
            } else if (key == "omega") {
                cfg.omega = value.get<double>();
            } else if (key == "periods") {
                cfg.periods = value.get<int>();
            } else if (key == "steps") {
                cfg.steps = value.get<int>();
            } else if (key == "out_dir") {
                cfg.out_dir = value.get<std::string>();
            } else if (key == "emit") {
                cfg.emit = value.get<std::string>();
            } else if (key == "strict") {
                cfg.strict = value.get<bool>();
            } else {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
        } catch (const nlohmann::json::exception&) {
            throw std::invalid_argument("bad value for config key '" + key + "'");
        }
    }
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    return {{"model", cfg.model},
            {"point", vec_json(cfg.point)},
            {"amplitude", cfg.amplitude},
            {"omega", cfg.omega},
            {"periods", cfg.periods},
            {"steps", cfg.steps},
            {"out_dir", cfg.out_dir},
            {"emit", cfg.emit},
            {"strict", cfg.strict}};
}

void validate_config(const RunConfig& cfg) {
    if (cfg.model.empty()) throw std::invalid_argument("model must not be empty");
    if (cfg.amplitude < 0.0) throw std::invalid_argument("amplitude must be >= 0");
    if (cfg.omega <= 0.0) throw std::invalid_argument("omega must be > 0");
    if (cfg.periods < 1) throw std::invalid_argument("periods must be >= 1");
    if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (cfg.emit != "csv" && cfg.emit != "svg" && cfg.emit != "both")
        throw std::invalid_argument("emit must be csv, svg, or both");
}

Vec6 parse_point(const std::string& text) {
    const auto values = parse_number_list(text);
    if (values.size() != kDim)
        throw std::invalid_argument("point needs 6 comma-separated numbers, got " +
                                    std::to_string(values.size()));
    Vec6 p;
    for (int k = 0; k < kDim; ++k) p[k] = values[k];
    return p;
}

std::array<VectorField, 3> parse_model_file(std::istream& is, const std::string& name) {
    std::array<VectorField, 3> fields;
    int found = 0, line_no = 0;
    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (found == 3)
            throw std::invalid_argument(name + ": expected exactly 3 field lines, found more");

        std::vector<std::string> parts;
        std::stringstream ss(line);
        std::string part;
        while (std::getline(ss, part, ';')) parts.push_back(part);
        if (parts.size() != kDim)
            throw std::invalid_argument(name + " line " + std::to_string(line_no) +
                                        ": expected 6 components separated by ';', got " +
                                        std::to_string(parts.size()));
        for (int c = 0; c < kDim; ++c) {
            try {
                fields[found].comp[c] = parse(parts[c]);
            } catch (const ParseError& e) {
                throw std::invalid_argument(name + " line " + std::to_string(line_no) +
                                            " component " + std::to_string(c + 1) + ": " +
                                            e.what());
            }
        }
        ++found;
    }
    if (found != 3)
        throw std::invalid_argument(name + ": expected 3 field lines, got " +
                                    std::to_string(found));
    return fields;
}

Model resolve_model(const std::string& name) {
    if (name == "original")
        return {name, Parametrization::Original, fields_original()};
    if (name == "transformed")
        return {name, Parametrization::Transformed, fields_transformed()};
    std::ifstream is(name);
    if (!is) throw std::invalid_argument("cannot open model file '" + name + "'");
    return {name, Parametrization::Transformed, parse_model_file(is, name)};
}

Analysis analyze_at(std::span<const VectorField> fields, const Vec6& p) {
    Analysis a;
    a.flag = growth_vector(fields, p);
    a.weights = a.flag.weights();
    a.frame = adapted_frame(fields, p);
    a.transform = privileged_transform(a.frame);
    a.privileged = verify_privileged(a.transform, fields, p, a.weights);

    FrameMatrix back;
    back.role = MatrixRole::Transform;
    back.entries = a.transform.entries.inverse();
    const Vec6 back_center = -(a.transform.entries * p);

    // Re-expanding the pulled-back components through taylor() collects the
    // affine terms and drops inverse-roundoff noise below kZeroTol.
    std::array<Expr, kDim> shift;
    for (int k = 0; k < kDim; ++k)
        shift[k] = Expr::variable(k + 1) + Expr::constant(-p[k]);
    const std::array<double, kDim> pc = {p[0], p[1], p[2], p[3], p[4], p[5]};

    for (int i = 0; i < 3; ++i) {
        const VectorField g_y = pushforward(fields[i], a.transform, p);
        a.hat[i] = weighted_truncate(g_y, a.weights);
        a.hat_fields_y[i] = a.hat[i].to_field('y');
        a.first_order[i] = verify_first_order(g_y, a.hat[i]);

        const VectorField raw = pushforward(a.hat_fields_y[i], back, back_center);
        a.hat_fields_x[i].tag = 'x';
        for (int k = 0; k < kDim; ++k) {
            const Polynomial pk =
                Polynomial::taylor(raw.comp[k], pc, kTruncationTaylorDegree);
            a.hat_fields_x[i].comp[k] = pk.to_expression().substitute(shift);
        }
    }
    a.nilpotency = verify_nilpotent(a.hat[0], a.hat[1], a.hat[2]);
    a.all_pass = a.privileged.all_pass && a.nilpotency.all_pass && a.first_order[0].pass &&
                 a.first_order[1].pass && a.first_order[2].pass;
    return a;
}

nlohmann::json analysis_json(const Model& model, const Vec6& p, const Analysis& a) {
    nlohmann::json j;
    j["model"] = model.name;
    j["point"] = vec_json(p);
    j["growth_vector"] = a.flag.dims;
    j["degree_of_nonholonomy"] = a.flag.degree_of_nonholonomy();
    j["weights"] = a.weights;
    j["frame"] = matrix_json(a.frame.entries);
    j["transform"] = matrix_json(a.transform.entries);

    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : a.privileged.checks)
        checks.push_back({{"coordinate", c.coordinate},
                          {"expected_weight", c.expected_weight},
                          {"computed_order", c.computed_order ? nlohmann::json(*c.computed_order)
                                                              : nlohmann::json(nullptr)},
                          {"pass", c.pass}});
    j["privileged"] = {{"all_pass", a.privileged.all_pass}, {"checks", checks}};

    nlohmann::json hat_y = nlohmann::json::array(), hat_x = nlohmann::json::array(),
                   monomials = nlohmann::json::array(), first = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        hat_y.push_back(a.hat_fields_y[i].to_string());
        hat_x.push_back(a.hat_fields_x[i].to_string());
        nlohmann::json comps = nlohmann::json::array();
        for (int k = 0; k < kDim; ++k) comps.push_back(polynomial_json(a.hat[i].comp[k]));
        monomials.push_back(comps);

        nlohmann::json violations = nlohmann::json::array();
        for (const auto& v : a.first_order[i].violations) {
            nlohmann::json alpha = nlohmann::json::array();
            for (int k = 0; k < kDim; ++k) alpha.push_back(v.alpha[k]);
            violations.push_back({{"component", v.component},
                                  {"alpha", alpha},
                                  {"coefficient", v.coefficient},
                                  {"weighted_degree", v.weighted_deg}});
        }
        first.push_back({{"pass", a.first_order[i].pass}, {"violations", violations}});
    }
    j["hat_fields_y"] = hat_y;
    j["hat_fields_x"] = hat_x;
    j["hat_monomials"] = monomials;
    j["first_order"] = first;

    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& pb : a.nilpotency.pair_brackets)
        pairs.push_back({{"i", pb.i},
                         {"j", pb.j},
                         {"value_at_zero", vec_json(pb.value_at_zero)},
                         {"constant", pb.constant}});
    bool triples_zero = true;
    for (const auto& tb : a.nilpotency.triple_brackets) triples_zero = triples_zero && tb.zero;
    j["nilpotency"] = {{"all_pass", a.nilpotency.all_pass},
                       {"pairs", pairs},
                       {"triples_zero", triples_zero}};
    j["all_pass"] = a.all_pass;
    return j;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (const char* env = std::getenv("TSNAKE_OUT_DIR"); env && *env) cfg.out_dir = env;

    // Apply --config before CLI11 so explicit flags override file values.
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string_view arg = argv[i];
        if (arg == "--config" && i + 1 < argc)
            config_path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0)
            config_path = std::string(arg.substr(9));
    }
    if (!config_path.empty()) {
        try {
            std::ifstream is(config_path);
            if (!is) throw std::invalid_argument("cannot open config file '" + config_path + "'");
            apply_config_json(cfg, nlohmann::json::parse(is));
        } catch (const std::exception& e) {
            err << "config error: " << e.what() << '\n';
            return kExitError;
        }
    }

    CLI::App app{"trident snake geometric control toolkit"};
    std::string config_sink, point_str;
    app.add_option("--config", config_sink, "JSON config file; explicit flags override it");
    app.add_option("--model", cfg.model, "original | transformed | path to a DSL model file");
    app.add_option("--point", point_str, "base point as x1,x2,x3,x4,x5,x6");
    app.add_option("--amplitude", cfg.amplitude, "loop amplitude A");
    app.add_option("--omega", cfg.omega, "loop frequency");
    app.add_option("--periods", cfg.periods, "number of input periods (simulate)");
    app.add_option("--steps", cfg.steps, "RK4 steps per period");
    app.add_option("--out", cfg.out_dir, "output directory (default $TSNAKE_OUT_DIR or .)");
    app.add_option("--emit", cfg.emit, "csv | svg | both")
        ->check(CLI::IsMember({"csv", "svg", "both"}));
    app.add_flag("--strict", cfg.strict, "exit nonzero on reported verification failures");
    app.require_subcommand(1);

    auto* sc_model = app.add_subcommand("model", "print the selected control fields");
    auto* sc_analyze =
        app.add_subcommand("analyze", "growth vector, privileged coordinates, certificates");
    auto* sc_bracket = app.add_subcommand("bracket", "bracket-loop displacements");
    auto* sc_sim = app.add_subcommand("simulate", "integrate the model, write trajectory files");
    auto* sc_cmp = app.add_subcommand("compare", "exact vs nilpotent model along a bracket loop");
    auto* sc_sweep = app.add_subcommand("sweep", "amplitude sweep convergence table");

    std::string which_str, dsl_str;
    auto* opt_which = sc_model->add_option("--which", which_str, "original | transformed")
                          ->check(CLI::IsMember({"original", "transformed"}));
    auto* opt_dsl = sc_model->add_option("--dsl", dsl_str, "DSL model file");
    opt_which->excludes(opt_dsl);

    std::string bracket_kind = "all", sim_kind = "12", cmp_kind = "12", sweep_kinds = "all";
    std::string amplitudes_str = "0.2,0.1,0.05";
    sc_bracket->add_option("--kind", bracket_kind, "12 | 23 | 13 | all")
        ->check(CLI::IsMember({"12", "23", "13", "all"}));
    sc_sim->add_option("--kind", sim_kind, "12 | 23 | 13")
        ->check(CLI::IsMember({"12", "23", "13"}));
    sc_cmp->add_option("--kind", cmp_kind, "12 | 23 | 13")
        ->check(CLI::IsMember({"12", "23", "13"}));
    sc_sweep->add_option("--kinds", sweep_kinds, "12 | 23 | 13 | all")
        ->check(CLI::IsMember({"12", "23", "13", "all"}));
    sc_sweep->add_option("--amplitudes", amplitudes_str, "comma-separated amplitudes");
    for (auto* sc : {sc_model, sc_analyze, sc_bracket, sc_sim, sc_cmp, sc_sweep})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (!point_str.empty()) cfg.point = parse_point(point_str);
        if (!which_str.empty()) cfg.model = which_str;
        if (!dsl_str.empty()) cfg.model = dsl_str;
        validate_config(cfg);
        if (sc_model->parsed()) return cmd_model(cfg, out);
        if (sc_analyze->parsed()) return cmd_analyze(cfg, out);
        if (sc_bracket->parsed()) return cmd_bracket(cfg, kinds_from(bracket_kind), out);
        if (sc_sim->parsed()) return cmd_simulate(cfg, kind_from(sim_kind), out);
        if (sc_cmp->parsed()) return cmd_compare(cfg, kind_from(cmp_kind), out);
        if (sc_sweep->parsed())
            return cmd_sweep(cfg, kinds_from(sweep_kinds), parse_number_list(amplitudes_str), out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace tsnake
