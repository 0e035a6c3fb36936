#pragma once

#include <map>
#include <optional>
#include <string>

#include "socpmw/cost.hpp"
#include "socpmw/instance.hpp"

namespace socpmw {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// On-disk instance: a full SOCP when theta is absent, a feasibility instance
// when present.
struct InstanceFile {
  SocpInstance socp;
  std::optional<double> theta;
};

InstanceFile parse_instance_text(const std::string& text);
InstanceFile load_instance(const std::string& path);
std::string serialize_instance(const SocpInstance& P,
                               std::optional<double> theta);
void save_instance(const std::string& path, const SocpInstance& P,
                   std::optional<double> theta);

FeasibilityInstance to_feasibility(const InstanceFile& file);

// Point file: {version, x: [n]}.
Eigen::VectorXd load_point(const std::string& path);
void save_point(const std::string& path, const Eigen::VectorXd& x);

// Report file per the CLI contract; cost holds the serialized CostReport.
struct ReportFile {
  int version = 1;
  std::string status;
  std::optional<double> g;
  std::optional<double> epsilon;
  std::optional<double> theta;
  std::map<int, double> y;
  std::vector<double> x;
  std::vector<double> margins;
  CostReport cost;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;

  bool operator==(const ReportFile& o) const;
};

std::string serialize_report(const ReportFile& rep);
ReportFile parse_report_text(const std::string& text);
void save_report(const std::string& path, const ReportFile& rep);
ReportFile load_report(const std::string& path);

}  // namespace socpmw
