#include "ztoa/scenario.hpp"

#include "ztoa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ztoa {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& section, const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw validation_error("scenario: value of [" + section + "] " + key +
                               " is not a number: '" + v + "'");
    return x;
}

int parse_int(const std::string& section, const std::string& key, const std::string& v) {
    const double x = parse_number(section, key, v);
    if (x != std::floor(x))
        throw validation_error("scenario: value of [" + section + "] " + key + " must be an integer");
    return static_cast<int>(x);
}

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> k = {
        {"scenario", {"name"}},
        {"particle", {"mass_u"}},
        {"grid", {"x_min_um", "x_max_um", "n_points"}},
        {"packet", {"x_focus_um", "t_focus_us", "delta_x_um", "v_mean_cm_s", "weight_re", "weight_im"}},
        {"schedule", {"model", "delta_t_us", "delta_t_ns", "v0_hbar_per_us", "alpha",
                      "inner_dt_us", "inner_dt_ns", "t_start_us", "t_end_us"}},
        {"validation", {"start_right_norm_max"}},
        {"output", {"t_points"}},
    };
    return k;
}

} // namespace

ScenarioDocument parse_ini(const std::string& text) {
    ScenarioDocument doc;
    std::istringstream in(text);
    std::string line;
    ScenarioDocument::Section* current = nullptr;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw validation_error("scenario line " + std::to_string(lineno) +
                                       ": malformed section header");
            doc.sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
            current = &doc.sections.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || current == nullptr)
            throw validation_error("scenario line " + std::to_string(lineno) +
                                   ": expected 'key = value' inside a section");
        current->entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return doc;
}

namespace {

Scenario build_scenario(const ScenarioDocument& doc) {
    Scenario s;
    std::set<std::string> seen_sections;
    bool have_mass = false, have_grid = false, have_tend = false;

    for (const auto& sec : doc.sections) {
        const auto it = known_keys().find(sec.name);
        if (it == known_keys().end())
            throw validation_error("scenario: unknown section [" + sec.name + "]");
        if (sec.name != "packet" && !seen_sections.insert(sec.name).second)
            throw validation_error("scenario: duplicate section [" + sec.name + "]");

        std::set<std::string> seen_keys;
        ScenarioPacket pkt;
        bool pkt_dx = false, pkt_v = false;
        for (const auto& [key, value] : sec.entries) {
            if (!it->second.count(key))
                throw validation_error("scenario: unknown key '" + key + "' in section [" +
                                       sec.name + "]");
            if (!seen_keys.insert(key).second)
                throw validation_error("scenario: duplicate key '" + key + "' in [" + sec.name + "]");

            if (sec.name == "scenario") {
                s.name = value;
            } else if (sec.name == "particle") {
                s.mass_u = parse_number(sec.name, key, value);
                have_mass = true;
            } else if (sec.name == "grid") {
                if (key == "x_min_um") s.x_min_um = parse_number(sec.name, key, value);
                else if (key == "x_max_um") s.x_max_um = parse_number(sec.name, key, value);
                else s.n_points = parse_int(sec.name, key, value);
                have_grid = true;
            } else if (sec.name == "packet") {
                if (key == "x_focus_um") pkt.x_focus_um = parse_number(sec.name, key, value);
                else if (key == "t_focus_us") pkt.t_focus_us = parse_number(sec.name, key, value);
                else if (key == "delta_x_um") { pkt.delta_x_um = parse_number(sec.name, key, value); pkt_dx = true; }
                else if (key == "v_mean_cm_s") { pkt.v_mean_cm_s = parse_number(sec.name, key, value); pkt_v = true; }
                else if (key == "weight_re") pkt.weight_re = parse_number(sec.name, key, value);
                else pkt.weight_im = parse_number(sec.name, key, value);
            } else if (sec.name == "schedule") {
                if (key == "model") s.model = value;
                else if (key == "delta_t_us") s.delta_t_us = parse_number(sec.name, key, value);
                else if (key == "delta_t_ns") s.delta_t_us = parse_number(sec.name, key, value) * 1e-3;
                else if (key == "v0_hbar_per_us") s.v0_hbar_per_us = parse_number(sec.name, key, value);
                else if (key == "alpha") s.alpha = parse_number(sec.name, key, value);
                else if (key == "inner_dt_us") s.inner_dt_us = parse_number(sec.name, key, value);
                else if (key == "inner_dt_ns") s.inner_dt_us = parse_number(sec.name, key, value) * 1e-3;
                else if (key == "t_start_us") s.t_start_us = parse_number(sec.name, key, value);
                else { s.t_end_us = parse_number(sec.name, key, value); have_tend = true; }
            } else if (sec.name == "validation") {
                s.start_right_norm_max = parse_number(sec.name, key, value);
            } else if (sec.name == "output") {
                s.t_points = parse_int(sec.name, key, value);
            }
        }
        if (sec.name == "packet") {
            if (!pkt_dx || !pkt_v)
                throw validation_error("scenario: [packet] requires delta_x_um and v_mean_cm_s");
            s.packets.push_back(pkt);
        }
    }

    if (s.name.empty()) throw validation_error("scenario: missing [scenario] name");
    if (!have_mass) throw validation_error("scenario: missing [particle] mass_u");
    if (!have_grid) throw validation_error("scenario: missing [grid] section");
    if (s.packets.empty()) throw validation_error("scenario: at least one [packet] is required");
    if (!have_tend) throw validation_error("scenario: missing [schedule] t_end_us");
    if (s.t_points < 2) throw validation_error("scenario: t_points must be >= 2");
    return s;
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    return build_scenario(parse_ini(text));
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

Scenario parse_scenario_with_overrides(const std::string& text,
                                       const std::vector<std::string>& overrides) {
    ScenarioDocument doc = parse_ini(text);
    for (const auto& ov : overrides) {
        const auto eq = ov.find('=');
        const auto dot = ov.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw validation_error("override must look like section.key=value: '" + ov + "'");
        const std::string section = ov.substr(0, dot);
        const std::string key = ov.substr(dot + 1, eq - dot - 1);
        const std::string value = ov.substr(eq + 1);
        if (section == "packet")
            throw validation_error("overrides for [packet] sections are not supported");
        auto sit = std::find_if(doc.sections.begin(), doc.sections.end(),
                                [&](const auto& s) { return s.name == section; });
        if (sit == doc.sections.end()) {
            doc.sections.push_back({section, {}});
            sit = doc.sections.end() - 1;
        }
        auto kit = std::find_if(sit->entries.begin(), sit->entries.end(),
                                [&](const auto& kv) { return kv.first == key; });
        if (kit == sit->entries.end())
            sit->entries.emplace_back(key, value);
        else
            kit->second = value;
    }
    return build_scenario(doc);
}

namespace {

double normal_tail(double z) {  // P(Z > z)
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

/// Analytic right-of-origin mass of the superposition at time t
/// (incoherent part sum; cross terms are negligible for validated states).
double analytic_right_mass(const std::vector<GaussianSpec>& parts, double t) {
    double wsum = 0.0, mass = 0.0;
    for (const auto& p : parts) {
        const double w2 = std::norm(p.weight);
        wsum += w2;
        const double z = (0.0 - p.center_at(t)) / p.spread_at(t);
        mass += w2 * normal_tail(z);
    }
    return mass / wsum;
}

double find_auto_start(const std::vector<GaussianSpec>& parts, double threshold) {
    double anchor = parts.front().t_focus;
    double scale = std::abs(parts.front().delta_x / parts.front().v_mean);
    for (const auto& p : parts) {
        anchor = std::min(anchor, p.t_focus);
        if (p.v_mean != 0.0) scale = std::max(scale, std::abs(p.delta_x / p.v_mean));
    }
    const double target = 0.66 * threshold;
    if (analytic_right_mass(parts, anchor) <= target) return anchor;

    double lo = 0.0, hi = scale;
    int i = 0;
    while (analytic_right_mass(parts, anchor - hi) > target) {
        hi *= 2.0;
        if (++i > 60)
            throw validation_error(
                "start search: cannot reach the start clearance (right mass floor above "
                "start_right_norm_max; negative-momentum tail too large?)");
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (analytic_right_mass(parts, anchor - mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return anchor - hi;
}

} // namespace

ResolvedScenario resolve_scenario(const Scenario& s) {
    ResolvedScenario r;
    r.raw = s;
    r.units = UnitSystem::for_mass_u(s.mass_u);
    r.grid = make_shared_grid(r.units.length_from_um(s.x_min_um),
                              r.units.length_from_um(s.x_max_um), s.n_points);

    for (const auto& p : s.packets) {
        GaussianSpec g;
        g.x_focus = r.units.length_from_um(p.x_focus_um);
        g.t_focus = r.units.time_from_us(p.t_focus_us);
        g.delta_x = r.units.length_from_um(p.delta_x_um);
        g.v_mean = r.units.velocity_from_cm_s(p.v_mean_cm_s);
        g.weight = cplx(p.weight_re, p.weight_im);
        if (!(g.delta_x > 0.0)) throw validation_error("scenario: delta_x_um must be positive");
        if (!(g.v_mean > 0.0))
            throw validation_error("scenario: packets must move toward the origin (v_mean_cm_s > 0)");
        r.parts.push_back(g);
    }

    if (s.model) {
        const auto m = measurement_model_from_string(*s.model);
        if (!m) throw validation_error("scenario: unknown model '" + *s.model + "'");
        r.model = m;
    }

    r.t_start = s.t_start_us ? r.units.time_from_us(*s.t_start_us)
                             : find_auto_start(r.parts, s.start_right_norm_max);

    // schedule in internal units
    r.schedule.t_end = r.units.time_from_us(s.t_end_us);
    if (r.model) r.schedule.model = *r.model;
    if (s.delta_t_us) r.schedule.delta_t = r.units.time_from_us(*s.delta_t_us);
    if (s.v0_hbar_per_us) r.schedule.v0 = r.units.energy_from_hbar_per_us(*s.v0_hbar_per_us);
    if (s.alpha) {
        if (r.schedule.v0 > 0.0 && r.schedule.delta_t > 0.0)
            throw validation_error("scenario: give at most two of delta_t, v0, alpha");
        if (r.schedule.delta_t > 0.0)
            r.schedule.v0 = *s.alpha / r.schedule.delta_t;
        else if (r.schedule.v0 > 0.0)
            r.schedule.delta_t = *s.alpha / r.schedule.v0;
        else
            throw validation_error("scenario: alpha needs delta_t or v0 alongside it");
        r.schedule.alpha = *s.alpha;
    }
    if (s.inner_dt_us) r.schedule.inner_dt = r.units.time_from_us(*s.inner_dt_us);

    // ideal reference and arrival window
    FreeReference ref(r.grid, r.parts);
    r.ideal_window = default_time_window(r.parts);
    auto zeno = zeno_ideal_distribution(ref, linspace(r.ideal_window.t_lo, r.ideal_window.t_hi, 4001));
    r.zeno_mean = mean_arrival(zeno);
    r.zeno_std = stddev_arrival(zeno);
    r.schedule.arrival_window_end = r.zeno_mean + 3.0 * r.zeno_std;

    // start-state validation
    WaveFunction psi0 = superpose(r.parts, r.grid, r.t_start);
    for (const auto& p : r.parts) {
        const double c = p.center_at(r.t_start);
        const double sp = p.spread_at(r.t_start);
        if (c - 6.0 * sp < r.grid->x_min || c + 6.0 * sp > r.grid->x_max)
            throw validation_error("scenario validation: a packet's +-6 spread support leaves the "
                                   "grid at the start time");
    }
    r.start_diagnostics = packet_diagnostics(psi0);
    r.right_norm_start = right_norm(psi0);
    r.boundary_mass_start = boundary_node_mass(psi0);
    if (r.start_diagnostics.neg_k_fraction >= 1e-6)
        throw validation_error("scenario validation: negative-momentum fraction " +
                               std::to_string(r.start_diagnostics.neg_k_fraction) + " >= 1e-6");
    if (r.right_norm_start > s.start_right_norm_max)
        throw validation_error("scenario validation: right-of-origin norm at start " +
                               std::to_string(r.right_norm_start) + " exceeds start_right_norm_max");

    if (r.model) {
        MeasurementSchedule probe = r.schedule;
        r.warnings = probe.validate_and_resolve(r.t_start);
        r.schedule = probe;
    }
    return r;
}

WaveFunction start_state(const ResolvedScenario& r) {
    return superpose(r.parts, r.grid, r.t_start);
}

} // namespace ztoa
