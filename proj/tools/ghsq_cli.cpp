// ghsq: quantum obesity, discord and steering ellipsoids for two-qubit
// states, and the Gisin-state model in GHS dilaton spacetime.
//
// Exit codes: 0 success, 1 domain/validation error, 2 parse/IO error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghsq/ghsq.hpp"

namespace {

using nlohmann::json;

struct ModelFlags {
    std::optional<std::string> region;
    std::optional<double> g;
    std::optional<std::string> alpha;
    std::optional<double> mass;
    std::optional<double> dilation;
    std::optional<double> omega;

    bool any() const { return region || g || alpha || mass || dilation || omega; }

    void register_on(CLI::App* app) {
        app->add_option("--region", region, "AB_I, AB_II or B_I_B_II");
        app->add_option("--g", g, "Gisin mixing parameter in [0, 1]");
        app->add_option("--alpha", alpha, "Bell angle, radians or multiples of pi (e.g. pi/4)");
        app->add_option("--mass", mass, "black hole mass M");
        app->add_option("--dilation", dilation, "dilation parameter D in [0, M]");
        app->add_option("--omega", omega, "Dirac field frequency");
    }

    /// Writes the explicitly given values into `fixed` under canonical keys.
    void apply(std::map<std::string, double>& fixed) const {
        if (g) fixed["g"] = *g;
        if (alpha) fixed["alpha"] = ghsq::parse_angle(*alpha);
        if (mass) fixed["M"] = *mass;
        if (dilation) fixed["D"] = *dilation;
        if (omega) fixed["omega"] = *omega;
    }

    ghsq::ModelPoint point() const {
        std::map<std::string, double> values;
        apply(values);
        return ghsq::model_point(region ? ghsq::parse_region(*region) : ghsq::Region::AB_I, values);
    }
};

json point_json(const ghsq::ModelPoint& pt) {
    return {{"region", std::string(ghsq::region_name(pt.region))},
            {"g", pt.g},
            {"alpha", pt.alpha},
            {"mass", pt.mass},
            {"dilation", pt.dilation},
            {"omega", pt.omega}};
}

json validation_json(const ghsq::ValidationReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"invariant", c.name}, {"passed", c.passed}, {"violation", c.violation}, {"tolerance", c.tolerance}});
    return {{"valid", rep.ok()}, {"min_eigenvalue", rep.min_eigenvalue}, {"checks", checks}};
}

/// State from --state or from the model flags; `meta` collects provenance.
ghsq::DensityMatrix resolve_state(const std::optional<std::string>& state_path, const ModelFlags& model, json& meta) {
    if (state_path) {
        if (model.any()) throw ghsq::ParseError("--state cannot be combined with model parameters");
        meta["source"] = *state_path;
        return ghsq::load_density(*state_path);
    }
    const ghsq::ModelPoint pt = model.point();
    meta["source"] = "model";
    meta["model"] = point_json(pt);
    const ghsq::GhsParams ghs = pt.ghs();
    meta["ghs"] = ghsq::ghs_json(ghs);
    return ghsq::reduced_state(pt.region, pt.gisin(), ghs);
}

void require_valid_state(const ghsq::DensityMatrix& rho) {
    const auto rep = ghsq::validate_state(rho);
    if (!rep.ok()) throw ghsq::ValidationError("invalid state: " + rep.first_failure());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ghsq::IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw ghsq::IoError("write to '" + path + "' failed");
}

int run(int argc, char** argv) {
    CLI::App app{"Quantum obesity, discord and steering ellipsoids in GHS dilaton spacetime"};
    app.require_subcommand(1);

    // quantify
    auto* quantify = app.add_subcommand("quantify", "quantifiers of a single two-qubit state, as JSON");
    ModelFlags q_model;
    std::optional<std::string> q_state;
    std::string q_outputs = "obesity,discord";
    int q_grid = 64;
    q_model.register_on(quantify);
    quantify->add_option("--state", q_state, "density matrix JSON file");
    quantify->add_option("--outputs", q_outputs, "comma list: obesity,discord,discord-numeric,ellipsoid");
    quantify->add_option("--grid", q_grid, "grid steps for the numeric discord search")->check(CLI::Range(32, 4096));

    // sweep
    auto* sweep = app.add_subcommand("sweep", "sweep one parameter and write CSV");
    ModelFlags s_model;
    std::optional<std::string> s_config, s_sweep, s_outputs, s_out;
    std::optional<int> s_grid;
    unsigned s_threads = 0;
    s_model.register_on(sweep);
    sweep->add_option("--config", s_config, "sweep spec as JSON; flags override its fields");
    sweep->add_option("--sweep", s_sweep, "<param>:<from>:<to>:<steps>, param in D, g, alpha, omega");
    sweep->add_option("--outputs", s_outputs, "comma list: obesity,discord,discord-numeric,ellipsoid");
    sweep->add_option("--out", s_out, "CSV path (stdout if omitted)");
    sweep->add_option("--grid", s_grid, "grid steps for the numeric discord search");
    sweep->add_option("--threads", s_threads, "worker threads (0 = hardware concurrency)");

    // ellipsoid
    auto* ellipsoid = app.add_subcommand("ellipsoid", "steering ellipsoid mesh (Wavefront text) plus JSON summary");
    ModelFlags e_model;
    std::optional<std::string> e_state;
    std::string e_out;
    int e_lat = 24;
    int e_lon = 48;
    e_model.register_on(ellipsoid);
    ellipsoid->add_option("--state", e_state, "density matrix JSON file");
    ellipsoid->add_option("--lat", e_lat, "latitude steps (>= 4)");
    ellipsoid->add_option("--lon", e_lon, "longitude steps (>= 8)");
    ellipsoid->add_option("--out", e_out, "mesh output path")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "check density-matrix invariants");
    ModelFlags v_model;
    std::optional<std::string> v_state;
    v_model.register_on(validate);
    validate->add_option("--state", v_state, "density matrix JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (quantify->parsed()) {
        json out = json::object();
        const auto rho = resolve_state(q_state, q_model, out);
        require_valid_state(rho);
        const auto flags = ghsq::parse_outputs(q_outputs);
        const auto q = ghsq::quantify(rho, flags, q_grid);
        out.update(ghsq::quantities_json(rho, q));
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (sweep->parsed()) {
        ghsq::SweepSpec spec;
        bool fixed_from_config = false;
        if (s_config) {
            std::ifstream in(*s_config);
            if (!in) throw ghsq::IoError("cannot open config '" + *s_config + "'");
            json j;
            try {
                in >> j;
            } catch (const json::parse_error& e) {
                throw ghsq::ParseError("cannot parse config '" + *s_config + "': " + e.what());
            }
            spec = ghsq::sweep_spec_from_json(j);
            fixed_from_config = true;
        }
        if (s_model.region) spec.region = ghsq::parse_region(*s_model.region);
        if (s_sweep) {
            ghsq::apply_sweep_token(spec, *s_sweep);
            if (fixed_from_config) spec.fixed.erase(std::string(ghsq::param_key(spec.param)));
        }
        s_model.apply(spec.fixed);
        if (s_outputs) spec.outputs = ghsq::parse_outputs(*s_outputs);
        if (s_grid) spec.grid_steps = *s_grid;

        const auto rows = ghsq::run_sweep(spec, s_threads);
        std::ostringstream csv;
        ghsq::write_csv(csv, spec, rows);
        if (s_out && *s_out != "-") write_text_file(*s_out, csv.str());
        else std::cout << csv.str();
        return 0;
    }

    if (ellipsoid->parsed()) {
        json out = json::object();
        const auto rho = resolve_state(e_state, e_model, out);
        require_valid_state(rho);
        const auto e = ghsq::steering_ellipsoid(rho);
        const auto mesh = ghsq::ellipsoid_mesh(e, e_lat, e_lon);
        std::ostringstream obj;
        ghsq::write_obj(obj, mesh);
        write_text_file(e_out, obj.str());
        out["ellipsoid"] = ghsq::ellipsoid_json(e);
        out["mesh"] = {{"path", e_out}, {"vertices", mesh.vertices.size()}, {"faces", mesh.faces.size()}};
        std::cout << out.dump(2) << '\n';
        return 0;
    }

    if (validate->parsed()) {
        json out = json::object();
        const auto rho = resolve_state(v_state, v_model, out);
        const auto rep = ghsq::validate_state(rho);
        out["dim"] = rho.dim();
        out["labels"] = rho.labels();
        out.update(validation_json(rep));
        std::cout << out.dump(2) << '\n';
        if (!rep.ok()) {
            std::cerr << "ghsq: invalid state: " << rep.first_failure() << '\n';
            return 1;
        }
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ghsq::ParseError& e) {
        std::cerr << "ghsq: parse error: " << e.what() << '\n';
        return 2;
    } catch (const ghsq::IoError& e) {
        std::cerr << "ghsq: I/O error: " << e.what() << '\n';
        return 2;
    } catch (const ghsq::Error& e) {
        std::cerr << "ghsq: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ghsq: unexpected error: " << e.what() << '\n';
        return 2;
    }
}
