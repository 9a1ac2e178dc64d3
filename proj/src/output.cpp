#include "filsim/output.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace filsim {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

}  // namespace

void write_trace_csv(std::ostream& out, const HybridModel& model,
                     const SimTrace& trace) {
  out << "t";
  for (const auto& name : model.state_names()) out << "," << name;
  out << ",regime\n";
  for (const auto& sample : trace.samples) {
    out << fmt(sample.t);
    for (int i = 0; i < sample.x.size(); ++i) out << "," << fmt(sample.x[i]);
    out << "," << sample.regime.label(model) << "\n";
  }
}

void write_trace_csv(const std::string& path, const HybridModel& model,
                     const SimTrace& trace) {
  auto out = open_or_throw(path);
  write_trace_csv(out, model, trace);
}

void write_events_json(std::ostream& out, const HybridModel& model,
                       const SimTrace& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ev : trace.events) {
    nlohmann::json item;
    item["t"] = ev.t;
    item["kind"] = to_string(ev.kind);
    nlohmann::json manifolds = nlohmann::json::array();
    for (int j : ev.manifolds) manifolds.push_back(model.switching(j).name);
    item["manifolds"] = manifolds;
    item["from"] = ev.from;
    item["to"] = ev.to;
    nlohmann::json x = nlohmann::json::array();
    for (int i = 0; i < ev.x.size(); ++i) x.push_back(ev.x[i]);
    item["x"] = x;
    arr.push_back(item);
  }
  out << arr.dump(2) << "\n";
}

void write_events_json(const std::string& path, const HybridModel& model,
                       const SimTrace& trace) {
  auto out = open_or_throw(path);
  write_events_json(out, model, trace);
}

void write_plot_svg(std::ostream& out, const HybridModel& model,
                    const SimTrace& trace,
                    const std::vector<std::string>& vars) {
  const auto& names = model.state_names();
  std::vector<int> idx;
  for (const auto& v : vars) {
    auto it = std::find(names.begin(), names.end(), v);
    if (it == names.end())
      throw std::runtime_error("unknown plot variable '" + v + "'");
    idx.push_back(static_cast<int>(it - names.begin()));
  }
  if (idx.empty() || trace.samples.empty()) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"480\"/>\n";
    return;
  }

  double t_min = trace.samples.front().t, t_max = trace.samples.back().t;
  double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
  for (const auto& s : trace.samples)
    for (int i : idx) {
      y_min = std::min(y_min, s.x[i]);
      y_max = std::max(y_max, s.x[i]);
    }
  if (t_max <= t_min) t_max = t_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;

  const double width = 800, height = 480;
  const double ml = 60, mr = 20, mt = 20, mb = 40;
  auto sx = [&](double t) {
    return ml + (t - t_min) / (t_max - t_min) * (width - ml - mr);
  };
  auto sy = [&](double y) {
    return height - mb - (y - y_min) / (y_max - y_min) * (height - mt - mb);
  };

  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 8
      << "\" font-size=\"13\" text-anchor=\"middle\">t</text>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    double t = t_min + tick * (t_max - t_min) / 5;
    double y = y_min + tick * (y_max - y_min) / 5;
    out << "<text x=\"" << sx(t) << "\" y=\"" << height - mb + 16
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << std::setprecision(4) << t << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << sy(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << std::setprecision(4)
        << y << "</text>\n";
  }
  // event markers
  for (const auto& ev : trace.events)
    out << "<line x1=\"" << sx(ev.t) << "\" y1=\"" << mt << "\" x2=\""
        << sx(ev.t) << "\" y2=\"" << height - mb
        << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"3,3\"/>\n";
  // series
  for (std::size_t s = 0; s < idx.size(); ++s) {
    out << "<polyline fill=\"none\" stroke=\"" << kColors[s % 8]
        << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& sample : trace.samples)
      out << sx(sample.t) << "," << sy(sample.x[idx[s]]) << " ";
    out << "\"/>\n";
    out << "<text x=\"" << width - mr - 8 << "\" y=\"" << mt + 16 * (s + 1)
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"" << kColors[s % 8]
        << "\">" << vars[s] << "</text>\n";
  }
  out << "</svg>\n";
}

void write_plot_svg(const std::string& path, const HybridModel& model,
                    const SimTrace& trace,
                    const std::vector<std::string>& vars) {
  auto out = open_or_throw(path);
  write_plot_svg(out, model, trace, vars);
}

}  // namespace filsim
