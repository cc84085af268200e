#pragma once

#include "ztoa/analysis.hpp"
#include "ztoa/distributions.hpp"
#include "ztoa/units.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ztoa {

/// Raw key/value document: flat INI-style sections.  [packet] may repeat;
/// every other section is unique.  Unknown sections or keys are rejected.
struct ScenarioDocument {
    struct Section {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;
    };
    std::vector<Section> sections;
};

ScenarioDocument parse_ini(const std::string& text);

/// One packet in file units.
struct ScenarioPacket {
    double x_focus_um = 0.0;
    double t_focus_us = 0.0;
    double delta_x_um = 0.0;
    double v_mean_cm_s = 0.0;
    double weight_re = 1.0;
    double weight_im = 0.0;
};

/// Scenario in file units, fully validated for key completeness.
struct Scenario {
    std::string name;
    double mass_u = 0.0;
    double x_min_um = 0.0, x_max_um = 0.0;
    int n_points = 0;
    std::vector<ScenarioPacket> packets;

    std::optional<std::string> model;
    std::optional<double> delta_t_us;
    std::optional<double> v0_hbar_per_us;
    std::optional<double> alpha;
    std::optional<double> inner_dt_us;
    std::optional<double> t_start_us;  // absent -> automatic start search
    double t_end_us = 0.0;

    double start_right_norm_max = 1e-9;
    int t_points = 2001;
};

/// Parse and reject unknown keys (error message names the offender).
Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);

/// Apply `section.key=value` overrides to the document before building.
Scenario parse_scenario_with_overrides(const std::string& text,
                                       const std::vector<std::string>& overrides);

/// Scenario resolved to internal units, with the start state validated.
struct ResolvedScenario {
    Scenario raw;
    UnitSystem units;
    std::shared_ptr<const SpatialGrid> grid;
    std::vector<GaussianSpec> parts;   // internal units
    std::optional<MeasurementModel> model;
    MeasurementSchedule schedule;      // internal units; model filled if given
    double t_start = 0.0;              // internal
    TimeWindow ideal_window;           // default +-8 sigma arrival window
    double zeno_mean = 0.0;            // mean_arrival of the ideal Zeno distribution
    double zeno_std = 0.0;
    PacketDiagnostics start_diagnostics;
    double right_norm_start = 0.0;
    double boundary_mass_start = 0.0;
    std::vector<std::string> warnings;
};

/// Convert, run the automatic start search if needed, build the start
/// state and validate it (clearance, negative momenta, boundary tails).
/// Throws validation_error with the violated invariant named.
ResolvedScenario resolve_scenario(const Scenario& s);

/// The validated start state (built fresh; resolve_scenario does not keep it).
WaveFunction start_state(const ResolvedScenario& r);

} // namespace ztoa
