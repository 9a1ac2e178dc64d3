#pragma once

#include "filsim/integrator.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace filsim {

/// Trace as CSV: header `t,<state names>,regime`, one row per sample,
/// values at full double precision.
void write_trace_csv(std::ostream& out, const HybridModel& model,
                     const SimTrace& trace);
void write_trace_csv(const std::string& path, const HybridModel& model,
                     const SimTrace& trace);

/// Events as a JSON array of {t, kind, manifolds, from, to, x}.
void write_events_json(std::ostream& out, const HybridModel& model,
                       const SimTrace& trace);
void write_events_json(const std::string& path, const HybridModel& model,
                       const SimTrace& trace);

/// Self-contained SVG line plot of the named states against time, with
/// event times marked as vertical lines. `vars` must name existing states.
void write_plot_svg(std::ostream& out, const HybridModel& model,
                    const SimTrace& trace, const std::vector<std::string>& vars);
void write_plot_svg(const std::string& path, const HybridModel& model,
                    const SimTrace& trace, const std::vector<std::string>& vars);

}  // namespace filsim
