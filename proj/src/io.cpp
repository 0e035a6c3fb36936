#include "socpmw/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace socpmw {

namespace {

using json = nlohmann::ordered_json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw IoError(std::string("missing or non-numeric field: ") + key);
  return j[key].get<double>();
}

}  // namespace

InstanceFile parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("parse error: ") + e.what());
  }
  if (!j.is_object()) throw IoError("instance: top level must be an object");
  if (static_cast<int>(get_number(j, "version")) != 1)
    throw IoError("instance: unsupported version");
  int m = static_cast<int>(get_number(j, "m"));
  if (m < 1) throw IoError("instance: m must be positive");
  if (!j.contains("cones") || !j["cones"].is_array() || j["cones"].empty())
    throw IoError("instance: cones must be a non-empty array");

  std::vector<int> sizes;
  std::vector<RowMatrixXd> A;
  std::vector<Eigen::VectorXd> c_blocks;
  for (const auto& cj : j["cones"]) {
    int sz = static_cast<int>(get_number(cj, "size"));
    if (sz < 1) throw IoError("instance: cone size must be positive");
    sizes.push_back(sz);
    if (!cj.contains("A") || !cj["A"].is_array() ||
        static_cast<int>(cj["A"].size()) != m)
      throw IoError("instance: cone block A must have m rows");
    RowMatrixXd blk(m, sz);
    for (int row = 0; row < m; ++row) {
      const auto& rj = cj["A"][row];
      if (!rj.is_array() || static_cast<int>(rj.size()) != sz)
        throw IoError("instance: A row length mismatch");
      for (int i = 0; i < sz; ++i) {
        if (!rj[i].is_number()) throw IoError("instance: non-numeric A entry");
        blk(row, i) = rj[i].get<double>();
      }
    }
    A.push_back(std::move(blk));
    Eigen::VectorXd cb = Eigen::VectorXd::Zero(sz);
    if (cj.contains("c")) {
      if (!cj["c"].is_array() || static_cast<int>(cj["c"].size()) != sz)
        throw IoError("instance: c length mismatch");
      for (int i = 0; i < sz; ++i) {
        if (!cj["c"][i].is_number())
          throw IoError("instance: non-numeric c entry");
        cb[i] = cj["c"][i].get<double>();
      }
    }
    c_blocks.push_back(std::move(cb));
  }

  if (!j.contains("b") || !j["b"].is_array() ||
      static_cast<int>(j["b"].size()) != m)
    throw IoError("instance: b must have length m");
  Eigen::VectorXd b(m);
  for (int row = 0; row < m; ++row) {
    if (!j["b"][row].is_number()) throw IoError("instance: non-numeric b entry");
    b[row] = j["b"][row].get<double>();
  }

  InstanceFile out;
  out.socp.part = ConePartition(sizes);
  out.socp.A = std::move(A);
  out.socp.b = std::move(b);
  Eigen::VectorXd c(out.socp.part.n());
  for (int k = 0; k < out.socp.part.r(); ++k)
    c.segment(out.socp.part.offset(k), out.socp.part.size(k)) = c_blocks[k];
  out.socp.c = MulticoneVector(out.socp.part, std::move(c));
  if (j.contains("R")) out.socp.R = get_number(j, "R");
  if (j.contains("R_tilde")) out.socp.R_tilde = get_number(j, "R_tilde");
  if (j.contains("theta")) out.theta = get_number(j, "theta");

  auto diags = out.theta ? validate(to_feasibility(out)) : validate(out.socp);
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error)
      throw IoError("instance: " + d.message);
  return out;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance_text(ss.str());
}

std::string serialize_instance(const SocpInstance& P,
                               std::optional<double> theta) {
  json j;
  j["version"] = 1;
  j["m"] = P.m();
  j["cones"] = json::array();
  for (int k = 0; k < P.part.r(); ++k) {
    json cj;
    int sz = P.part.size(k);
    cj["size"] = sz;
    json rows = json::array();
    for (int row = 0; row < P.m(); ++row) {
      json rj = json::array();
      for (int i = 0; i < sz; ++i) rj.push_back(P.A[k](row, i));
      rows.push_back(std::move(rj));
    }
    cj["A"] = std::move(rows);
    json cv = json::array();
    for (int i = 0; i < sz; ++i) cv.push_back(P.c.cone(k)[i]);
    cj["c"] = std::move(cv);
    j["cones"].push_back(std::move(cj));
  }
  j["b"] = json::array();
  for (int row = 0; row < P.m(); ++row) j["b"].push_back(P.b[row]);
  j["R"] = P.R;
  j["R_tilde"] = P.R_tilde;
  if (theta) j["theta"] = *theta;
  return j.dump(2) + "\n";
}

void save_instance(const std::string& path, const SocpInstance& P,
                   std::optional<double> theta) {
  write_text_file(path, serialize_instance(P, theta));
}

FeasibilityInstance to_feasibility(const InstanceFile& file) {
  if (!file.theta) throw IoError("instance file has no theta");
  FeasibilityInstance F;
  F.part = file.socp.part;
  F.A = file.socp.A;
  F.b = file.socp.b;
  F.theta = *file.theta;
  return F;
}

Eigen::VectorXd load_point(const std::string& path) {
  json j = read_json_file(path);
  if (!j.is_object() || !j.contains("x") || !j["x"].is_array())
    throw IoError("point: expected object with array field x");
  Eigen::VectorXd x(j["x"].size());
  for (std::size_t i = 0; i < j["x"].size(); ++i) {
    if (!j["x"][i].is_number()) throw IoError("point: non-numeric entry");
    x[static_cast<int>(i)] = j["x"][i].get<double>();
  }
  return x;
}

void save_point(const std::string& path, const Eigen::VectorXd& x) {
  json j;
  j["version"] = 1;
  j["x"] = json::array();
  for (int i = 0; i < x.size(); ++i) j["x"].push_back(x[i]);
  write_text_file(path, j.dump(2) + "\n");
}

namespace {

json cost_to_json(const CostReport& c) {
  json j;
  j["oracle_mode"] = c.oracle_mode;
  j["counts"] = {{"entry_queries", c.counts.sq.entry_queries},
                 {"row_samples", c.counts.sq.row_samples},
                 {"norm_queries", c.counts.sq.norm_queries},
                 {"gibbs_draws", c.counts.gibbs_draws},
                 {"oracle_calls", c.counts.oracle_calls},
                 {"mw_iterations", c.counts.mw_iterations},
                 {"bs_steps", c.counts.bs_steps}};
  j["predicted"] = {{"T", c.predicted.T},
                    {"xi", c.predicted.xi},
                    {"T_prime", c.predicted.T_prime},
                    {"B", c.predicted.B},
                    {"M", c.predicted.M},
                    {"sq_samples_per_call", c.predicted.sq_samples_per_call},
                    {"corollary", c.predicted.corollary}};
  json fj = json::array();
  for (const auto& f : c.formulas)
    fj.push_back({{"name", f.name}, {"formula", f.formula}, {"value", f.value}});
  j["formulas"] = std::move(fj);
  return j;
}

CostReport cost_from_json(const json& j) {
  CostReport c;
  c.oracle_mode = j.at("oracle_mode").get<std::string>();
  const auto& cj = j.at("counts");
  c.counts.sq.entry_queries = cj.at("entry_queries").get<long long>();
  c.counts.sq.row_samples = cj.at("row_samples").get<long long>();
  c.counts.sq.norm_queries = cj.at("norm_queries").get<long long>();
  c.counts.gibbs_draws = cj.at("gibbs_draws").get<long long>();
  c.counts.oracle_calls = cj.at("oracle_calls").get<long long>();
  c.counts.mw_iterations = cj.at("mw_iterations").get<long long>();
  c.counts.bs_steps = cj.at("bs_steps").get<long long>();
  const auto& pj = j.at("predicted");
  c.predicted.T = pj.at("T").get<long long>();
  c.predicted.xi = pj.at("xi").get<double>();
  c.predicted.T_prime = pj.at("T_prime").get<long long>();
  c.predicted.B = pj.at("B").get<long long>();
  c.predicted.M = pj.at("M").get<long long>();
  c.predicted.sq_samples_per_call =
      pj.at("sq_samples_per_call").get<long long>();
  c.predicted.corollary = pj.at("corollary").get<double>();
  for (const auto& f : j.at("formulas"))
    c.formulas.push_back({f.at("name").get<std::string>(),
                          f.at("formula").get<std::string>(),
                          f.at("value").get<double>()});
  return c;
}

}  // namespace

bool ReportFile::operator==(const ReportFile& o) const {
  auto cost_eq = [](const CostReport& a, const CostReport& b) {
    if (a.oracle_mode != b.oracle_mode) return false;
    if (a.counts.mw_iterations != b.counts.mw_iterations ||
        a.counts.oracle_calls != b.counts.oracle_calls ||
        a.counts.gibbs_draws != b.counts.gibbs_draws ||
        a.counts.bs_steps != b.counts.bs_steps ||
        a.counts.sq.entry_queries != b.counts.sq.entry_queries ||
        a.counts.sq.row_samples != b.counts.sq.row_samples ||
        a.counts.sq.norm_queries != b.counts.sq.norm_queries)
      return false;
    if (a.predicted.T != b.predicted.T || a.predicted.xi != b.predicted.xi ||
        a.predicted.T_prime != b.predicted.T_prime ||
        a.predicted.B != b.predicted.B || a.predicted.M != b.predicted.M ||
        a.predicted.sq_samples_per_call != b.predicted.sq_samples_per_call ||
        a.predicted.corollary != b.predicted.corollary)
      return false;
    if (a.formulas.size() != b.formulas.size()) return false;
    for (std::size_t i = 0; i < a.formulas.size(); ++i)
      if (a.formulas[i].name != b.formulas[i].name ||
          a.formulas[i].formula != b.formulas[i].formula ||
          a.formulas[i].value != b.formulas[i].value)
        return false;
    return true;
  };
  return version == o.version && status == o.status && g == o.g &&
         epsilon == o.epsilon && theta == o.theta && y == o.y && x == o.x &&
         margins == o.margins && seed == o.seed && wall_ms == o.wall_ms &&
         cost_eq(cost, o.cost);
}

std::string serialize_report(const ReportFile& rep) {
  json j;
  j["version"] = rep.version;
  j["status"] = rep.status;
  if (rep.g) j["g"] = *rep.g;
  if (rep.epsilon) j["epsilon"] = *rep.epsilon;
  if (rep.theta) j["theta"] = *rep.theta;
  json yj = json::object();
  for (const auto& [idx, val] : rep.y) yj[std::to_string(idx)] = val;
  j["y"] = std::move(yj);
  j["x"] = rep.x;
  j["margins"] = rep.margins;
  j["cost"] = cost_to_json(rep.cost);
  j["seed"] = rep.seed;
  j["wall_ms"] = rep.wall_ms;
  return j.dump(2) + "\n";
}

ReportFile parse_report_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw IoError(std::string("report parse error: ") + e.what());
  }
  ReportFile rep;
  try {
    rep.version = j.at("version").get<int>();
    rep.status = j.at("status").get<std::string>();
    if (j.contains("g")) rep.g = j["g"].get<double>();
    if (j.contains("epsilon")) rep.epsilon = j["epsilon"].get<double>();
    if (j.contains("theta")) rep.theta = j["theta"].get<double>();
    for (const auto& [key, val] : j.at("y").items())
      rep.y[std::stoi(key)] = val.get<double>();
    rep.x = j.at("x").get<std::vector<double>>();
    rep.margins = j.at("margins").get<std::vector<double>>();
    rep.cost = cost_from_json(j.at("cost"));
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.wall_ms = j.at("wall_ms").get<double>();
  } catch (const std::exception& e) {
    throw IoError(std::string("report: ") + e.what());
  }
  return rep;
}

void save_report(const std::string& path, const ReportFile& rep) {
  write_text_file(path, serialize_report(rep));
}

ReportFile load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_report_text(ss.str());
}

}  // namespace socpmw
