#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ghsq/discord.hpp"
#include "ghsq/ghs_model.hpp"
#include "ghsq/obesity.hpp"
#include "ghsq/steering.hpp"

namespace ghsq {

// ---------------------------------------------------------------------------
// Token parsing

inline double parse_number(std::string_view s) {
    std::string t(s);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError("not a number: '" + std::string(s) + "'");
    return v;
}

/// Radians, or a multiple of pi: "pi", "-pi/4", "3pi/8", "3*pi/8", "0.5*pi".
inline double parse_angle(std::string_view s) {
    static const std::regex pi_expr(R"(^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)",
                                    std::regex::icase);
    const std::string t(s);
    std::smatch m;
    if (std::regex_match(t, m, pi_expr)) {
        double coef = 1.0;
        const std::string c = m[1].str();
        if (c == "-") coef = -1.0;
        else if (!c.empty() && c != "+") coef = parse_number(c);
        double den = 1.0;
        if (m[2].matched) den = parse_number(m[2].str());
        if (den == 0.0) throw ParseError("zero denominator in angle '" + t + "'");
        return coef * std::numbers::pi / den;
    }
    return parse_number(s);
}

// ---------------------------------------------------------------------------
// Outputs and parameters

struct OutputFlags {
    bool obesity = false;
    bool discord = false;
    bool discord_numeric = false;
    bool ellipsoid = false;

    static OutputFlags all() { return {true, true, true, true}; }
    bool any() const { return obesity || discord || discord_numeric || ellipsoid; }
};

inline OutputFlags parse_outputs(std::string_view list) {
    OutputFlags f;
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto comma = list.find(',', pos);
        std::string tok(list.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char ch) { return std::isspace(ch); }), tok.end());
        std::replace(tok.begin(), tok.end(), '_', '-');
        if (tok == "obesity") f.obesity = true;
        else if (tok == "discord") f.discord = true;
        else if (tok == "discord-numeric") f.discord_numeric = true;
        else if (tok == "ellipsoid") f.ellipsoid = true;
        else if (tok == "all") f = OutputFlags::all();
        else if (!tok.empty()) throw ParseError("unknown output '" + tok + "'");
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return f;
}

enum class SweepParam { D, g, alpha, omega };

inline std::string_view param_key(SweepParam p) {
    switch (p) {
    case SweepParam::D: return "D";
    case SweepParam::g: return "g";
    case SweepParam::alpha: return "alpha";
    case SweepParam::omega: return "omega";
    }
    return "?";
}

inline std::string_view param_column(SweepParam p) {
    switch (p) {
    case SweepParam::D: return "dilation";
    case SweepParam::g: return "g";
    case SweepParam::alpha: return "alpha";
    case SweepParam::omega: return "omega";
    }
    return "?";
}

inline SweepParam parse_sweep_param(std::string_view s) {
    if (s == "D" || s == "dilation") return SweepParam::D;
    if (s == "g") return SweepParam::g;
    if (s == "alpha") return SweepParam::alpha;
    if (s == "omega" || s == "w") return SweepParam::omega;
    throw ParseError("cannot sweep '" + std::string(s) + "' (expected D, g, alpha or omega)");
}

/// Canonical name for a fixed-parameter key; accepts the CLI spellings too.
inline std::string canonical_key(std::string_view k) {
    if (k == "M" || k == "mass") return "M";
    if (k == "D" || k == "dilation") return "D";
    if (k == "omega" || k == "w") return "omega";
    if (k == "g") return "g";
    if (k == "alpha") return "alpha";
    throw ParseError("unknown model parameter '" + std::string(k) + "'");
}

/// One point of the model: a region plus all five physical parameters.
struct ModelPoint {
    Region region = Region::AB_I;
    double g = 1.0;
    double alpha = std::numbers::pi / 4.0;
    double mass = 1.0;
    double dilation = 0.0;
    double omega = 1.0;

    GisinParams gisin() const { return {g, alpha}; }
    GhsParams ghs() const { return ghs_params(mass, dilation, omega); }
    DensityMatrix state() const { return reduced_state(region, gisin(), ghs()); }
};

inline void set_param(ModelPoint& pt, std::string_view key, double value) {
    const std::string k = canonical_key(key);
    if (k == "M") pt.mass = value;
    else if (k == "D") pt.dilation = value;
    else if (k == "omega") pt.omega = value;
    else if (k == "g") pt.g = value;
    else pt.alpha = value;
}

inline ModelPoint model_point(Region region, const std::map<std::string, double>& values) {
    ModelPoint pt;
    pt.region = region;
    for (const auto& [k, v] : values) set_param(pt, k, v);
    return pt;
}

// ---------------------------------------------------------------------------
// Quantification of a single state

struct Quantities {
    std::optional<double> obesity;
    std::optional<DiscordBreakdown> discord; // analytic, X states only
    std::optional<double> discord_numeric;
    std::optional<SteeringEllipsoid> ellipsoid;
    bool discord_fallback = false; // discord requested on a non-X state
};

/// Evaluates the requested quantifiers. Non-X states get no analytic
/// discord; callers fall back to discord_numeric.
inline Quantities quantify(const DensityMatrix& rho, const OutputFlags& out, int grid_steps = 64) {
    require_two_qubit(rho);
    Quantities q;
    if (out.obesity) q.obesity = obesity(rho);
    if (out.discord && is_x_state(rho)) q.discord = discord_x(rho);
    q.discord_fallback = out.discord && !q.discord;
    if (out.discord_numeric || q.discord_fallback) q.discord_numeric = discord_numeric(rho, grid_steps);
    if (out.ellipsoid) q.ellipsoid = steering_ellipsoid(rho);
    return q;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
    Region region = Region::AB_I;
    std::map<std::string, double> fixed; // canonical keys: g, alpha, M, D, omega
    SweepParam param = SweepParam::D;
    double from = 0.0;
    double to = 0.99;
    int steps = 100;
    OutputFlags outputs{true, true, false, false};
    int grid_steps = 64;
};

inline double sweep_value(const SweepSpec& s, int i) {
    if (i == s.steps - 1) return s.to;
    return s.from + (s.to - s.from) * static_cast<double>(i) / static_cast<double>(s.steps - 1);
}

inline ModelPoint sweep_point(const SweepSpec& s, int i) {
    ModelPoint pt = model_point(s.region, s.fixed);
    set_param(pt, param_key(s.param), sweep_value(s, i));
    return pt;
}

inline void validate(const SweepSpec& s) {
    if (s.steps < 2) throw ArgumentError("sweep needs at least 2 steps");
    if (!(s.from < s.to)) throw ArgumentError("sweep range must satisfy from < to");
    if (s.fixed.count(std::string(param_key(s.param))))
        throw ArgumentError("swept parameter '" + std::string(param_key(s.param)) + "' is also fixed");
    if (s.grid_steps < 32) throw ArgumentError("grid_steps must be at least 32");
    for (int i : {0, s.steps - 1}) {
        const ModelPoint pt = sweep_point(s, i);
        validate(pt.gisin());
        (void)pt.ghs();
    }
}

/// "D:0:0.99:100" -> param, from, to, steps. Angle syntax allowed in bounds.
inline void apply_sweep_token(SweepSpec& s, std::string_view token) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto c = token.find(':', pos);
        parts.emplace_back(token.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
        if (c == std::string_view::npos) break;
        pos = c + 1;
    }
    if (parts.size() != 4) throw ParseError("sweep must look like <param>:<from>:<to>:<steps>, got '" + std::string(token) + "'");
    s.param = parse_sweep_param(parts[0]);
    s.from = parse_angle(parts[1]);
    s.to = parse_angle(parts[2]);
    const double n = parse_number(parts[3]);
    if (n != std::floor(n)) throw ParseError("sweep steps must be an integer");
    s.steps = static_cast<int>(n);
}

struct SweepRow {
    double value = 0.0;
    GhsParams ghs;
    Quantities q;
};

/// Rows in ascending order of the swept value. Rows are independent, so
/// they are spread over `threads` workers; the result does not depend on
/// the thread count.
inline std::vector<SweepRow> run_sweep(const SweepSpec& s, unsigned threads = 0) {
    validate(s);
    std::vector<SweepRow> rows(static_cast<std::size_t>(s.steps));
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(s.steps));

    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            for (int i = static_cast<int>(t); i < s.steps; i += static_cast<int>(threads)) {
                const ModelPoint pt = sweep_point(s, i);
                auto& row = rows[static_cast<std::size_t>(i)];
                row.value = sweep_value(s, i);
                row.ghs = pt.ghs();
                try {
                    row.q = quantify(pt.state(), s.outputs, s.grid_steps);
                } catch (const PureMarginalError& e) {
                    throw PureMarginalError(std::string(e.what()) + " at " + std::string(param_key(s.param)) +
                                            " = " + std::to_string(row.value));
                }
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

inline std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::vector<std::string> csv_columns(const SweepSpec& s) {
    std::vector<std::string> cols{std::string(param_column(s.param)), "eps1", "eps2", "temperature"};
    if (s.outputs.obesity) cols.emplace_back("obesity");
    if (s.outputs.discord) {
        cols.emplace_back("discord");
        cols.emplace_back("o1");
        cols.emplace_back("o2");
    }
    if (s.outputs.discord_numeric) cols.emplace_back("discord_numeric");
    if (s.outputs.ellipsoid)
        for (const char* c : {"center_x", "center_y", "center_z", "semi_axis_1", "semi_axis_2", "semi_axis_3", "volume"})
            cols.emplace_back(c);
    return cols;
}

inline void write_csv(std::ostream& os, const SweepSpec& s, const std::vector<SweepRow>& rows) {
    os << "# ghsq sweep region=" << region_name(s.region) << '\n';
    // Resolved values, defaults included, so the file alone reproduces the run.
    const ModelPoint pt = model_point(s.region, s.fixed);
    const std::pair<const char*, double> resolved[] = {
        {"g", pt.g}, {"alpha", pt.alpha}, {"M", pt.mass}, {"D", pt.dilation}, {"omega", pt.omega}};
    os << "# fixed";
    for (const auto& [k, v] : resolved)
        if (k != param_key(s.param)) os << ' ' << k << '=' << format_real(v);
    os << '\n';
    os << "# sweep " << param_key(s.param) << " from " << format_real(s.from) << " to " << format_real(s.to)
       << " steps " << s.steps << '\n';
    if (s.outputs.discord_numeric) os << "# discord_numeric grid_steps=" << s.grid_steps << '\n';

    const auto cols = csv_columns(s);
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << '\n';

    for (const auto& r : rows) {
        std::vector<double> vals{r.value, r.ghs.eps1, r.ghs.eps2, r.ghs.temperature};
        if (s.outputs.obesity) vals.push_back(*r.q.obesity);
        if (s.outputs.discord) {
            if (r.q.discord) {
                vals.push_back(r.q.discord->discord);
                vals.push_back(r.q.discord->o1);
                vals.push_back(r.q.discord->o2);
            } else {
                throw InternalError("sweep state is not an X state");
            }
        }
        if (s.outputs.discord_numeric) vals.push_back(*r.q.discord_numeric);
        if (s.outputs.ellipsoid) {
            const auto& e = *r.q.ellipsoid;
            vals.insert(vals.end(), {e.center.x(), e.center.y(), e.center.z(), e.semi_axes(0), e.semi_axes(1),
                                     e.semi_axes(2), e.volume()});
        }
        for (std::size_t c = 0; c < vals.size(); ++c) os << (c ? "," : "") << format_real(vals[c]);
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// JSON forms

/// Numbers pass through; strings go through parse_angle for alpha and
/// parse_number otherwise.
inline double json_real(const nlohmann::json& v, bool angle) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return angle ? parse_angle(v.get<std::string>()) : parse_number(v.get<std::string>());
    throw ParseError("expected a number, got " + v.dump());
}

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
    SweepSpec s;
    try {
        if (!j.is_object()) throw ParseError("sweep config must be a JSON object");
        if (j.contains("region")) s.region = parse_region(j.at("region").get<std::string>());
        if (j.contains("fixed")) {
            for (const auto& [k, v] : j.at("fixed").items()) {
                const std::string key = canonical_key(k);
                s.fixed[key] = json_real(v, key == "alpha");
            }
        }
        if (j.contains("sweep")) {
            const auto& sw = j.at("sweep");
            if (sw.is_string()) {
                apply_sweep_token(s, sw.get<std::string>());
            } else {
                s.param = parse_sweep_param(sw.at("param").get<std::string>());
                const bool ang = s.param == SweepParam::alpha;
                s.from = json_real(sw.at("from"), ang);
                s.to = json_real(sw.at("to"), ang);
                s.steps = sw.at("steps").get<int>();
            }
        }
        if (j.contains("outputs")) {
            const auto& o = j.at("outputs");
            if (o.is_string()) {
                s.outputs = parse_outputs(o.get<std::string>());
            } else {
                std::string joined;
                for (const auto& e : o) joined += e.get<std::string>() + ",";
                s.outputs = parse_outputs(joined);
            }
        }
        if (j.contains("grid_steps")) s.grid_steps = j.at("grid_steps").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("sweep config: ") + e.what());
    }
    return s;
}

inline nlohmann::json vec_json(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

inline nlohmann::json real_or_null(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

inline nlohmann::json ghs_json(const GhsParams& g) {
    return {{"mass", g.mass},     {"dilation", g.dilation}, {"omega", g.omega},
            {"lambda", g.lambda}, {"eps1", g.eps1},         {"eps2", g.eps2},
            {"temperature", real_or_null(g.temperature)},   {"charge", g.charge()}};
}

inline nlohmann::json ellipsoid_json(const SteeringEllipsoid& e) {
    nlohmann::json axes = nlohmann::json::array();
    for (int k = 0; k < 3; ++k) axes.push_back(vec_json(e.axes.col(k)));
    return {{"center", vec_json(e.center)},
            {"semi_axes", vec_json(e.semi_axes)},
            {"axes", axes},
            {"q_eigenvalues", vec_json(e.q_eigenvalues)},
            {"gamma_b", e.gamma_b},
            {"volume", e.volume()}};
}

inline nlohmann::json quantities_json(const DensityMatrix& rho, const Quantities& q) {
    nlohmann::json j = nlohmann::json::object();
    j["labels"] = rho.labels();
    j["x_state"] = is_x_state(rho);
    if (q.obesity) {
        j["obesity"] = *q.obesity;
        if (is_x_state(rho)) j["obesity_x"] = obesity_x(rho);
    }
    if (q.discord) {
        const auto& d = *q.discord;
        j["discord"] = d.discord;
        j["discord_breakdown"] = {{"s_b", d.s_b},   {"s_ab", d.s_ab},       {"h1", d.h1},     {"h2", d.h2},
                                  {"o1", d.o1},     {"o2", d.o2},           {"iota", d.iota}, {"beta", d.beta},
                                  {"eps", d.eps_pop}, {"tau", d.tau},       {"varsigma", d.varsigma}};
    } else if (q.discord_fallback) {
        j["discord"] = *q.discord_numeric;
        j["discord_method"] = "numeric";
    }
    if (q.discord_numeric) j["discord_numeric"] = *q.discord_numeric;
    if (q.ellipsoid) j["ellipsoid"] = ellipsoid_json(*q.ellipsoid);
    return j;
}

} // namespace ghsq
