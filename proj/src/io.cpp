#include "bbp/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace bbp {

using nlohmann::json;

namespace {

json formToJson(const BilinearForm& f) {
  json j;
  j["q"] = json::array();
  for (const auto& t : f.qTerms) j["q"].push_back({t.i, t.j, t.value});
  j["a"] = json::array();
  for (const auto& [i, v] : f.aLin) j["a"].push_back({i, v});
  j["b"] = json::array();
  for (const auto& [i, v] : f.bLin) j["b"].push_back({i, v});
  j["const"] = f.constant;
  return j;
}

BilinearForm formFromJson(const json& j) {
  BilinearForm f;
  for (const auto& t : j.value("q", json::array()))
    f.qTerms.push_back({t.at(0).get<int>(), t.at(1).get<int>(),
                        t.at(2).get<double>()});
  for (const auto& t : j.value("a", json::array()))
    f.aLin.emplace_back(t.at(0).get<int>(), t.at(1).get<double>());
  for (const auto& t : j.value("b", json::array()))
    f.bLin.emplace_back(t.at(0).get<int>(), t.at(1).get<double>());
  f.constant = j.value("const", 0.0);
  return f;
}

json channelToJson(const ResidualChannel& c) {
  return json{{"bound", c.bound}, {"cost", c.cost}};
}

std::optional<ResidualChannel> channelFromJson(const json& j,
                                               const char* key) {
  if (!j.contains(key)) return std::nullopt;
  ResidualChannel c;
  c.bound = j.at(key).value("bound", 0.0);
  c.cost = j.at(key).value("cost", 1.0);
  return c;
}

}  // namespace

std::string instanceToJson(const BBPInstance& inst) {
  json j;
  j["n1"] = inst.n1;
  j["n2"] = inst.n2;
  j["lower"] = std::vector<double>(inst.lower.begin(), inst.lower.end());
  j["upper"] = std::vector<double>(inst.upper.begin(), inst.upper.end());
  j["objective"] = formToJson(inst.objective);
  j["rows"] = json::array();
  for (const auto& row : inst.rows) {
    json r = formToJson(row.form);
    r["sense"] = "==";
    if (row.zPlus) r["zPlus"] = channelToJson(*row.zPlus);
    if (row.zMinus) r["zMinus"] = channelToJson(*row.zMinus);
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2);
}

BBPInstance instanceFromJson(const std::string& text) {
  json j = json::parse(text);
  BBPInstance inst;
  inst.n1 = j.at("n1").get<int>();
  inst.n2 = j.at("n2").get<int>();
  const auto lo = j.at("lower").get<std::vector<double>>();
  const auto hi = j.at("upper").get<std::vector<double>>();
  inst.lower = Eigen::Map<const Eigen::VectorXd>(lo.data(), lo.size());
  inst.upper = Eigen::Map<const Eigen::VectorXd>(hi.data(), hi.size());
  if (j.contains("objective")) inst.objective = formFromJson(j["objective"]);

  struct Pending {
    SlackConversion conv;
    std::optional<ResidualChannel> zPlus, zMinus;
  };
  std::vector<Pending> pending;
  for (const auto& r : j.value("rows", json::array())) {
    const std::string sense = r.value("sense", "==");
    char s = sense == "<=" ? '<' : sense == ">=" ? '>' : '=';
    Pending p;
    p.conv = inequalityToEquality(formFromJson(r), s, inst.box(), inst.n1);
    p.zPlus = channelFromJson(r, "zPlus");
    p.zMinus = channelFromJson(r, "zMinus");
    pending.push_back(std::move(p));
  }
  // Slack variables are appended as extra y-variables.
  int slacks = 0;
  for (const auto& p : pending)
    if (p.conv.slackNeeded) ++slacks;
  if (slacks > 0) {
    const int oldN = inst.n1 + inst.n2;
    inst.lower.conservativeResize(oldN + slacks);
    inst.upper.conservativeResize(oldN + slacks);
    int at = oldN;
    for (auto& p : pending)
      if (p.conv.slackNeeded) {
        inst.lower[at] = p.conv.slackLo;
        inst.upper[at] = p.conv.slackHi;
        p.conv.equality.bLin.emplace_back(at - inst.n1,
                                          static_cast<double>(p.conv.slackSign));
        ++at;
      }
    inst.n2 += slacks;
  }
  for (auto& p : pending) {
    BilinearRow row;
    row.form = std::move(p.conv.equality);
    row.zPlus = p.zPlus;
    row.zMinus = p.zMinus;
    inst.rows.push_back(std::move(row));
  }
  return inst;
}

BBPInstance loadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instanceFromJson(text);
}

void saveInstance(const BBPInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << instanceToJson(inst) << "\n";
}

FEInput feFromJson(const std::string& text) {
  json j = json::parse(text);
  FEInput fe;
  fe.dofCount = j.at("m").get<int>();
  const int m = fe.dofCount;
  // Matrices are dense row-major, either flat (length m*m) or nested rows.
  auto readMat = [&](const json& rows) {
    Eigen::MatrixXd M(m, m);
    if (!rows.empty() && rows.at(0).is_array()) {
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) M(r, c) = rows.at(r).at(c).get<double>();
    } else {
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          M(r, c) = rows.at(r * m + c).get<double>();
    }
    return M;
  };
  fe.mass = readMat(j.at("M"));
  fe.stiffness0 = readMat(j.at("K0"));
  for (const auto& k : j.value("K", json::array()))
    fe.stiffnessUpdates.push_back(readMat(k));
  for (const auto& mj : j.value("modes", json::array())) {
    FEMode mode;
    mode.lambda = mj.at("lambda").get<double>();
    for (const auto& b : mj.at("mask")) mode.instrumented.push_back(b.get<bool>());
    const auto shape = mj.at("shape").get<std::vector<double>>();
    mode.measuredShape =
        Eigen::Map<const Eigen::VectorXd>(shape.data(), shape.size());
    fe.modes.push_back(std::move(mode));
  }
  return fe;
}

FEInput loadFE(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FE file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return feFromJson(text);
}

std::string lpToJson(const LPProblem& p) {
  json j;
  j["numVars"] = p.numVars;
  j["lower"] = std::vector<double>(p.lower.begin(), p.lower.end());
  j["upper"] = std::vector<double>(p.upper.begin(), p.upper.end());
  j["objective"] =
      std::vector<double>(p.objective.begin(), p.objective.end());
  j["rows"] = json::array();
  for (const auto& r : p.rows) {
    json row;
    row["sense"] = std::string(1, r.sense);
    row["rhs"] = r.rhs;
    row["coeffs"] = json::array();
    for (const auto& [c, v] : r.coeffs) row["coeffs"].push_back({c, v});
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace bbp
