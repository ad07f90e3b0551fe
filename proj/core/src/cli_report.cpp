#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "widomlab/cli.hpp"

namespace widomlab::cli {

namespace {

std::string fmt17(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "R,value,method,stderr,wall_ms\n";
  for (const auto& row : rows) {
    os << fmt17(row.x) << ',' << fmt17(row.value) << ',' << row.method << ','
       << fmt17(row.std_error) << ",0\n";
  }
  return os.str();
}

std::string ExperimentReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["pass"] = pass;
  j["config"] = config_echo;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    j["rows"].push_back({{"x", row.x},
                         {"value", row.value},
                         {"method", row.method},
                         {"stderr", row.std_error},
                         {"wall_ms", row.wall_ms}});
  }
  j["fits"] = nlohmann::json::array();
  for (const auto& f : fits) {
    j["fits"].push_back({{"label", f.label},
                         {"coefficient", f.coefficient},
                         {"stderr", f.std_error},
                         {"target", f.target},
                         {"status", f.status},
                         {"pass", f.pass}});
  }
  j["notes"] = notes;
  return j.dump(2);
}

std::string write_report(const ExperimentReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::string base = out_dir + "/" + report.experiment;
  {
    std::ofstream csv(base + ".csv", std::ios::binary);
    csv << report.to_csv();
  }
  {
    std::ofstream json(base + ".json", std::ios::binary);
    json << report.to_json();
  }
  return base + ".csv";
}

}  // namespace widomlab::cli
