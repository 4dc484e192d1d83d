#include "hibi/report.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "hibi/digest.hpp"
#include "hibi/errors.hpp"

namespace hibi {

Json Report::to_json() const {
  return Json{{"command", command}, {"inputs", inputs},         {"verdict", verdict},
              {"scope", scope},     {"timing", {{"seconds", seconds}}},
              {"tool_version", tool_version}, {"status", status}};
}

Report Report::from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.verdict = j.at("verdict");
  r.scope = j.at("scope").get<std::string>();
  r.seconds = j.at("timing").at("seconds").get<double>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.status = j.at("status").get<int>();
  return r;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Json poset_json(const Poset& p) {
  Json covers = Json::array();
  for (const Cover& c : p.user_covers()) covers.push_back({p.name(c.lower), p.name(c.upper)});
  return Json{{"elements", p.names()}, {"covers", covers}, {"digest", p.digest()}};
}

Json matrix_json(const Matrix& m) { return m.to_rows(); }

Json classification_json(const Poset& p, const Classification& c) {
  Json tops = Json::array();
  for (Index t : top_nodes(p)) tops.push_back(p.name(t));
  Json j{{"verdict", c.verdict == Coverage::Covered ? "Covered" : "NotCovered"}, {"top_nodes", tops}};
  if (c.verdict == Coverage::Covered) {
    Json steps = Json::array();
    for (const auto& s : c.trace) steps.push_back(describe(p, s));
    j["trace"] = steps;
    j["trace_verified"] = verify_trace(p, c);
  } else if (c.witness) {
    j["witness"] = {p.name(c.witness->first), p.name(c.witness->second)};
  }
  return j;
}

Json verdict_json(const Poset& p, const Verdict& v) {
  Json j{{"kind", to_string(v.kind)},
         {"n", v.n},
         {"q", v.q},
         {"q_is_prime_power", is_prime_power(v.q)},
         {"z_strategy", to_string(v.z.strategy)},
         {"r", v.z.r},
         {"total", v.total},
         {"checked_count", v.checked_count},
         {"poset_digest", v.poset_digest}};
  if (v.witness) {
    Json rows = Json::object();
    for (int i = 0; i < v.witness->entries.rows; ++i) rows[p.name(i)] = v.witness->entries.to_rows()[i];
    j["witness"] = {{"alpha", matrix_json(v.witness->entries)},
                    {"rows", rows},
                    {"index", *v.witness_index},
                    {"digest", alpha_digest(*v.witness)}};
  }
  if (v.deltas_stored) {
    Json d = Json::object();
    for (const auto& [k, m] : v.deltas) d[k] = matrix_json(m);
    j["deltas"] = d;
  }
  return j;
}

Json dn_result_json(const Cone& cone, const PiExponent& a, const DnCheckResult& r) {
  Json j{{"rays", cone.rays},
         {"a_numerators", a.numerators},
         {"q", a.q},
         {"radius", r.radius},
         {"tuples_checked", r.tuples_checked}};
  if (const auto* m = std::get_if<DnMember>(&r.outcome)) {
    j["kind"] = "Member";
    if (!m->table.rows.empty()) {
      Json rows = Json::array();
      for (const auto& row : m->table.rows) rows.push_back({{"residues", row.residues}, {"vectors", row.vectors}});
      j["witness_table"] = rows;
    }
  } else {
    const auto& nw = std::get<DnNoWitness>(r.outcome);
    j["kind"] = "NoWitnessInRadius";
    j["failing_tuple"] = {{"residues", nw.residues}, {"index", nw.tuple_index}};
  }
  return j;
}

Json theorem_c_json(const TheoremCReport& rep) {
  const auto& p = rep.diamond;
  Json alpha = Json::object();
  Json n = Json::object();
  Json box = Json::object();
  for (Index i = 0; i < p.index_count(); ++i) {
    alpha[p.name(i)] = rep.alpha.entries.to_rows()[i];
    n[p.name(i)] = rep.table.n[i];
    box[p.name(i)] = {rep.box.lower[i], rep.box.upper[i]};
  }
  Json eps = Json::array();
  for (std::size_t c = 0; c < rep.table.covers.size(); ++c) {
    eps.push_back({{"cover", {p.name(rep.table.covers[c].lower), p.name(rep.table.covers[c].upper)}},
                   {"eps", rep.table.eps[c]}});
  }
  Json j{{"kind", rep.solve.feasible() ? "Feasible" : "Infeasible"},
              {"q", rep.alpha.q},
              {"q_is_prime_power", is_prime_power(rep.alpha.q)},
              {"poset", poset_json(p)},
              {"r", rep.z.r},
              {"alpha", alpha},
              {"rows_congruent", rep.congruent},
              {"N", n},
              {"eps", eps},
              {"box", box},
              {"trace", rep.solve.trace},
              {"note", "rows are listed as -inf, v1, v2, v3, v4; any relabelling is an automorphism"}};
  if (rep.solve.feasible()) {
    Json delta = Json::object();
    for (Index i = 0; i < p.index_count(); ++i) delta[p.name(i)] = rep.solve.delta->to_rows()[i];
    j["delta"] = delta;
  }
  return j;
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ReportCache::path_for(const std::string& command, const Json& inputs) const {
  return dir_ / (command + "-" + sha256_hex(command + "\n" + inputs.dump()) + ".json");
}

std::optional<Report> ReportCache::load(const std::string& command, const Json& inputs) const {
  std::ifstream in(path_for(command, inputs));
  if (!in) return std::nullopt;
  try {
    Report r = Report::from_json(Json::parse(in));
    if (r.command != command || r.inputs != inputs || r.tool_version != kToolVersion) return std::nullopt;
    return r;
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

void ReportCache::store(const Report& report) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(report.command, report.inputs);
  std::random_device rd;
  auto tmp = target;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << report.dump();
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace hibi
