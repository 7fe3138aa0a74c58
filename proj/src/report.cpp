#include "morreylab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace morreylab {

using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json provenance_json(const Provenance& p) {
  return json{{"grid", {{"dim", p.dim}, {"half_width", p.half_width}, {"points", p.points}}},
              {"bank",
               {{"alpha", p.alpha},
                {"size", p.bank_size},
                {"seed", p.bank_seed},
                {"reference_points", p.bank_reference_points},
                {"members", p.bank_parameters}}},
              {"cone",
               {{"apertures", p.apertures},
                {"t_min", p.t_min},
                {"t_max", p.t_max},
                {"scales_per_octave", p.scales_per_octave}}},
              {"family", {{"stride", p.stride}, {"k_min", p.k_min}, {"k_max", p.k_max}}},
              {"morrey", {{"p", p.p}, {"kappa", p.kappa}}},
              {"gstar", {{"lambda", p.lambda}, {"shells", p.shells}}},
              {"corpus_seed", p.corpus_seed}};
}

Provenance provenance_from(const json& j) {
  Provenance p;
  const auto& g = j.at("grid");
  p.dim = g.at("dim");
  p.half_width = g.at("half_width");
  p.points = g.at("points");
  const auto& b = j.at("bank");
  p.alpha = b.at("alpha");
  p.bank_size = b.at("size");
  p.bank_seed = b.at("seed");
  p.bank_reference_points = b.at("reference_points");
  p.bank_parameters = b.at("members").get<std::vector<std::vector<double>>>();
  const auto& c = j.at("cone");
  p.apertures = c.at("apertures").get<std::vector<double>>();
  p.t_min = c.at("t_min");
  p.t_max = c.at("t_max");
  p.scales_per_octave = c.at("scales_per_octave");
  const auto& f = j.at("family");
  p.stride = f.at("stride");
  p.k_min = f.at("k_min");
  p.k_max = f.at("k_max");
  p.p = j.at("morrey").at("p");
  p.kappa = j.at("morrey").at("kappa");
  p.lambda = j.at("gstar").at("lambda");
  p.shells = j.at("gstar").at("shells");
  p.corpus_seed = j.at("corpus_seed");
  return p;
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "csv" || name == "CSV") return ReportFormat::Csv;
  if (name == "json" || name == "JSON") return ReportFormat::Json;
  throw Error("unknown report format '" + name + "' (expected csv or json)");
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "experiment,instance,weight,lhs,rhs,ratio,flags\n";
  for (const auto& r : report.instances) {
    std::string flags = r.flags;
    if (r.skipped) flags = flags.empty() ? "skipped" : "skipped;" + flags;
    os << csv_field(report.experiment) << ',' << csv_field(r.instance) << ',' << csv_field(r.weight) << ','
       << exact(r.lhs) << ',' << exact(r.rhs) << ',' << exact(r.ratio) << ',' << csv_field(flags) << '\n';
  }
  return os.str();
}

std::string report_to_json(const ExperimentReport& report) {
  json instances = json::array();
  for (const auto& r : report.instances) {
    instances.push_back({{"instance", r.instance},
                         {"weight", r.weight},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"ratio", r.ratio},
                         {"skipped", r.skipped},
                         {"flags", r.flags}});
  }
  json flags = json::array();
  for (const auto& [k, v] : report.flags) flags.push_back({k, v});
  const json j{{"experiment", report.experiment},
               {"max_ratio", report.max_ratio},
               {"skipped", report.skipped},
               {"provenance", provenance_json(report.provenance)},
               {"flags", flags},
               {"instances", instances}};
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ExperimentReport rep;
  try {
    const json j = json::parse(text);
    rep.experiment = j.at("experiment");
    rep.max_ratio = j.at("max_ratio");
    rep.skipped = j.at("skipped");
    rep.provenance = provenance_from(j.at("provenance"));
    for (const auto& f : j.at("flags")) rep.flags.emplace_back(f.at(0), f.at(1));
    for (const auto& r : j.at("instances")) {
      InstanceResult ir;
      ir.instance = r.at("instance");
      ir.weight = r.at("weight");
      ir.lhs = r.at("lhs");
      ir.rhs = r.at("rhs");
      ir.ratio = r.at("ratio");
      ir.skipped = r.at("skipped");
      ir.flags = r.at("flags");
      rep.instances.push_back(std::move(ir));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return rep;
}

void write_report(const ExperimentReport& report, const std::string& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report to '" + path + "'");
  out << (format == ReportFormat::Csv ? report_to_csv(report) : report_to_json(report));
  if (!out) throw Error("cannot write report to '" + path + "'");
}

ExperimentReport read_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read report '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return report_from_json(ss.str());
}

}  // namespace morreylab
