#include "fujita/plots.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fujita/io.hpp"

namespace fujita {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double guide_slope(const nlohmann::json& result) {
  const double beta = result.at("config").at("symbol").at("beta").get<double>();
  const int dim = result.at("config").at("grid").at("dim").get<int>();
  return -(dim + 1.0) / beta;
}

}  // namespace

std::string sup_norm_plot_script(const nlohmann::json& result) {
  const auto& s = result.at("series");
  const auto& t = s.at("t");
  const auto& sup = s.at("sup_norm");
  std::ostringstream out;
  out << "# sup norm against time\n$series << EOD\n";
  double t_last = 0.0, s_last = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ti = t[i].get<double>(), si = sup[i].get<double>();
    if (ti <= 0.0 || si <= 0.0) continue;
    out << fmt(ti) << " " << fmt(si) << "\n";
    t_last = ti;
    s_last = si;
  }
  out << "EOD\n";
  const double slope = guide_slope(result);
  out << "set terminal pngcairo size 900,600\nset output 'sup_norm.png'\n"
      << "set logscale xy\nset xlabel 't'\nset ylabel '||u(t)||_inf'\n"
      << "slope = " << fmt(slope) << "\n"
      << "guide(x) = " << fmt(s_last > 0.0 ? s_last / std::pow(1.0 + t_last, slope) : 1.0)
      << " * (1 + x)**slope\n";
  if (!result.at("t_star").is_null()) {
    const double ts = result.at("t_star").get<double>();
    out << "t_star = " << fmt(ts) << "\n"
        << "set arrow from t_star, graph 0 to t_star, graph 1 nohead dashtype 2 lc rgb 'red'\n"
        << "set label 't*' at t_star, graph 0.95 offset 1,0\n";
  }
  out << "plot $series using 1:2 with lines lw 2 title 'sup norm', guide(x) dashtype 3 title sprintf('slope %g', slope)\n";
  return out.str();
}

std::string probe_plot_script(const nlohmann::json& result) {
  const auto& s = result.at("series");
  const auto& t = s.at("t");
  const auto& f = s.at("f_probe");
  const double beta = result.at("config").at("symbol").at("beta").get<double>();
  const int dim = result.at("config").at("grid").at("dim").get<int>();
  const double alpha = result.at("config").at("alpha").get<double>();
  std::ostringstream out;
  out << "# normalized probe series: f t^{(N+1)/beta} and f (1+t)^{1/alpha}\n$probe << EOD\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (f[i].is_null()) continue;
    const double ti = t[i].get<double>(), fi = f[i].get<double>();
    if (ti <= 0.0) continue;
    out << fmt(ti) << " " << fmt(fi * std::pow(ti, (dim + 1.0) / beta)) << " "
        << fmt(fi * std::pow(1.0 + ti, 1.0 / alpha)) << "\n";
  }
  out << "EOD\n"
      << "set terminal pngcairo size 900,600\nset output 'probe.png'\n"
      << "set logscale x\nset xlabel 't'\n"
      << "plot $probe using 1:2 with lines lw 2 title 'f t^{(N+1)/beta}', "
      << "$probe using 1:3 with lines lw 2 title 'f (1+t)^{1/alpha}'\n";
  return out.str();
}

std::string phase_plot_script(const std::string& phase_csv) {
  std::map<std::string, std::string> blocks;
  std::istringstream in(phase_csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("alpha,", 0) == 0) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 7) throw std::runtime_error("malformed phase.csv row: " + line);
    blocks[cells[6]] += cells[0] + " " + cells[2] + "\n";
  }
  const std::map<std::string, std::string> colors{
      {"blew_up", "red"}, {"decayed", "blue"}, {"undecided", "gray"}, {"error", "black"}};
  std::ostringstream out;
  out << "# phase diagram: alpha against bump amplitude, colored by status\n";
  for (const auto& [status, rows] : blocks) out << "$" << status << " << EOD\n" << rows << "EOD\n";
  out << "set terminal pngcairo size 900,600\nset output 'phase.png'\n"
      << "set logscale y\nset xlabel 'alpha'\nset ylabel 'amplitude'\nset key outside\n";
  std::string plot;
  for (const auto& [status, rows] : blocks) {
    if (!plot.empty()) plot += ", ";
    const auto c = colors.count(status) ? colors.at(status) : std::string("green");
    plot += "$" + status + " using 1:2 with points pt 7 ps 1.5 lc rgb '" + c + "' title '" + status + "'";
  }
  out << "plot " << (plot.empty() ? "NaN notitle" : plot) << "\n";
  return out.str();
}

std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& artifact,
                                              const std::filesystem::path& out_dir) {
  std::filesystem::path result, phase;
  if (std::filesystem::is_directory(artifact)) {
    if (std::filesystem::exists(artifact / "result.json")) result = artifact / "result.json";
    if (std::filesystem::exists(artifact / "phase.csv")) phase = artifact / "phase.csv";
  } else if (std::filesystem::exists(artifact)) {
    if (artifact.extension() == ".json") result = artifact;
    else if (artifact.extension() == ".csv") phase = artifact;
  }
  if (result.empty() && phase.empty()) throw std::runtime_error("no plottable artifact at " + artifact.string());
  std::vector<std::filesystem::path> written;
  if (!result.empty()) {
    const auto j = read_json(result);
    write_text(out_dir / "sup_norm.plot", sup_norm_plot_script(j));
    write_text(out_dir / "probe.plot", probe_plot_script(j));
    written.push_back(out_dir / "sup_norm.plot");
    written.push_back(out_dir / "probe.plot");
  }
  if (!phase.empty()) {
    write_text(out_dir / "phase.plot", phase_plot_script(read_text(phase)));
    written.push_back(out_dir / "phase.plot");
  }
  return written;
}

}  // namespace fujita
