#include "coalint/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace coalint {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  return j;
}

int require_n(const json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("missing integer field 'n'");
  return j["n"].get<int>();
}

std::string format_fixed(double value, int decimals) {
  double scale = std::pow(10.0, decimals);
  double rounded = std::round(value * scale) / scale;
  if (rounded == 0.0) rounded = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, rounded);
  return buf;
}

}  // namespace

TUGame parse_game_text(const std::string& text) {
  const json j = parse_json(text);
  const int n = require_n(j);
  require_game_size(n);
  const bool has_dense = j.contains("dense");
  const bool has_values = j.contains("values");
  if (has_dense == has_values)
    throw ParseError("game file needs exactly one of 'dense' or 'values'");
  if (has_dense) {
    if (!j["dense"].is_array()) throw ParseError("'dense' must be an array of numbers");
    std::vector<double> v;
    v.reserve(j["dense"].size());
    for (const json& x : j["dense"]) {
      if (!x.is_number()) throw ParseError("'dense' must contain only numbers");
      v.push_back(x.get<double>());
    }
    return TUGame::make(n, std::move(v));
  }
  if (!j["values"].is_object()) throw ParseError("'values' must map coalition keys to numbers");
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (const auto& [key, val] : j["values"].items()) {
    if (!val.is_number()) throw ParseError("value for coalition '" + key + "' must be a number");
    v[parse_coalition_key(key, n)] = val.get<double>();
  }
  return TUGame::make(n, std::move(v));
}

TUGame parse_game_file(const std::string& path) { return parse_game_text(read_file(path)); }

std::string game_to_json(const TUGame& game) {
  json j;
  j["n"] = game.n;
  j["dense"] = game.values;
  return j.dump();
}

CommGraph parse_graph_text(const std::string& text) {
  const json j = parse_json(text);
  const int n = require_n(j);
  require_game_size(n);
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("missing array field 'edges'");
  std::vector<std::pair<int, int>> edges;
  for (const json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ParseError("every edge must be a pair of player ids");
    const int a = e[0].get<int>();
    const int b = e[1].get<int>();
    if (a == b) throw LoopEdge("loop edge at node " + std::to_string(a));
    if (a > b)
      throw ParseError("edge [" + std::to_string(a) + "," + std::to_string(b) +
                       "] must list the smaller id first");
    edges.emplace_back(a, b);
  }
  return CommGraph::make(n, edges);
}

CommGraph parse_graph_file(const std::string& path) { return parse_graph_text(read_file(path)); }

std::string graph_to_json(const CommGraph& graph) {
  json j;
  j["n"] = graph.n;
  json edges = json::array();
  for (auto [a, b] : graph.edges()) edges.push_back(json::array({a, b}));
  j["edges"] = edges;
  return j.dump();
}

std::string table_to_json(const InteractionTable& table) {
  json j;
  j["kind"] = to_string(table.kind);
  j["n"] = table.n;
  j["max_order"] = table.max_order;
  json entries = json::array();
  for (const auto& e : table.entries) {
    json row;
    row["coalition"] = coalition_key(e.coalition);
    row["order"] = popcount(e.coalition);
    row["value"] = e.value;
    entries.push_back(row);
  }
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

std::string table_to_csv(const InteractionTable& table) {
  std::string out = "coalition,order,value\n";
  for (const auto& e : table.entries) {
    out += '"' + coalition_key(e.coalition) + "\"," + std::to_string(popcount(e.coalition)) + ',' +
           format_fixed(e.value, 6) + '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

CounterfactualReport counterfactual(const TUGame& game, const CommGraph& before,
                                    const CommGraph& after, IndexKind kind,
                                    const std::vector<Mask>& coalitions) {
  CounterfactualReport report;
  report.kind = kind;
  report.n = game.n;

  // Evaluate through the same cached paths the tables use.
  const DividendVector dividends = mobius(game);
  const CommunicationSituation sit_before(game, before);
  const CommunicationSituation sit_after(game, after);
  for (Mask s : coalitions) {
    CounterfactualRow row;
    row.coalition = s;
    switch (kind) {
      case IndexKind::shapley:
        row.before = row.after = sii_div(dividends, s);
        break;
      case IndexKind::banzhaf:
        row.before = row.after = banzhaf_div(dividends, s);
        break;
      case IndexKind::myerson:
        row.before = mii(sit_before, s);
        row.after = mii(sit_after, s);
        break;
      case IndexKind::network:
        row.before = nii(sit_before, s);
        row.after = nii(sit_after, s);
        break;
    }
    row.delta = row.after - row.before;
    report.rows.push_back(row);
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    const double da = std::abs(a.delta), db = std::abs(b.delta);
    if (da != db) return da > db;
    return std::pair(popcount(a.coalition), a.coalition) <
           std::pair(popcount(b.coalition), b.coalition);
  });
  return report;
}

CounterfactualReport counterfactual(const TUGame& game, const CommGraph& before,
                                    const CommGraph& after, IndexKind kind, int max_order) {
  if (max_order < 1 || max_order > game.n)
    throw OrderOutOfRange("max order must lie in 1.." + std::to_string(game.n));
  std::vector<Mask> coalitions;
  for (int order = 1; order <= max_order; ++order)
    for (Mask s = 1; s <= game.grand(); ++s)
      if (popcount(s) == order) coalitions.push_back(s);
  return counterfactual(game, before, after, kind, coalitions);
}

std::string counterfactual_to_csv(const CounterfactualReport& report) {
  std::string out = "coalition,order,before,after,delta\n";
  for (const auto& row : report.rows) {
    out += '"' + coalition_key(row.coalition) + "\"," + std::to_string(popcount(row.coalition)) +
           ',' + format_fixed(row.before, 6) + ',' + format_fixed(row.after, 6) + ',' +
           format_fixed(row.delta, 6) + '\n';
  }
  return out;
}

std::string counterfactual_to_json(const CounterfactualReport& report) {
  json j;
  j["kind"] = to_string(report.kind);
  j["n"] = report.n;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["coalition"] = coalition_key(row.coalition);
    r["order"] = popcount(row.coalition);
    r["before"] = row.before;
    r["after"] = row.after;
    r["delta"] = row.delta;
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

CommGraph bridge_graph() {
  return CommGraph::make(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5}});
}

namespace {

// One reproduction table: myerson / shapley / network rows over the given
// coalitions, two decimals to match print precision.
std::string reproduction_csv(const CommunicationSituation& sit, const std::vector<Mask>& columns,
                             const std::vector<std::string>& footnotes) {
  std::string head = "index";
  for (Mask s : columns) head += ",\"{" + coalition_key(s) + "}\"";
  std::string my = "myerson", sh = "shapley", nw = "network";
  for (Mask s : columns) {
    const double m = mii(sit, s);
    const double v = sii_div(sit.game_dividends(), s);
    my += ',' + format_fixed(m, 2);
    sh += ',' + format_fixed(v, 2);
    nw += ',' + format_fixed(m - v, 2);
  }
  std::string out = head + '\n' + my + '\n' + sh + '\n' + nw + '\n';
  for (const std::string& note : footnotes) out += "# " + note + '\n';
  return out;
}

// Columns in the reference layout: lexicographic by the sorted player
// tuple ({1,2}, {1,3}, ..., {1,n}, {2,3}, ...), not by mask value.
std::vector<Mask> coalitions_of_order(int n, int order) {
  std::vector<Mask> out;
  for (Mask s = 1; s <= full_mask(n); ++s)
    if (popcount(s) == order) out.push_back(s);
  std::sort(out.begin(), out.end(), [n](Mask a, Mask b) {
    for (int i = 1; i <= n; ++i) {
      const bool in_a = has_player(a, i), in_b = has_player(b, i);
      if (in_a != in_b) return in_a;
    }
    return false;
  });
  return out;
}

}  // namespace

ReproducedTables reproduce_case(const std::string& which) {
  ReproducedTables tables;
  if (which == "messages") {
    const CommunicationSituation sit(messages_game(5), bridge_graph());
    tables.files.emplace_back("table1.csv", reproduction_csv(sit, coalitions_of_order(5, 1), {}));
    tables.files.emplace_back(
        "table2.csv",
        reproduction_csv(sit, coalitions_of_order(5, 2),
                         {"myerson values follow the definition (shapley interaction of the "
                          "restricted game); commonly printed reference values 1.33, 0.50, 0.50 "
                          "for {1,4}, {1,5}, {4,5} are inconsistent with the single-player table "
                          "and the exact pair-sum identity, which this row satisfies"}));
  } else if (which == "horse") {
    const CommunicationSituation sit(horse_market(), bridge_graph());
    tables.files.emplace_back(
        "table3.csv",
        reproduction_csv(sit, coalitions_of_order(5, 1),
                         {"network value for {5} follows the identity network = myerson - shapley "
                          "(10.83 - 20.00 = -9.17); a commonly printed reference value -9.62 is "
                          "inconsistent with the myerson and shapley rows above"}));
    tables.files.emplace_back("table4.csv", reproduction_csv(sit, coalitions_of_order(5, 2), {}));
  } else {
    throw UnknownKind("unknown reproduction case '" + which + "' (expected messages or horse)");
  }
  return tables;
}

std::string axiom_reports_to_json(const std::vector<AxiomReport>& reports) {
  json arr = json::array();
  for (const AxiomReport& r : reports) {
    json j;
    j["index"] = r.index_name;
    j["axiom"] = to_string(r.axiom);
    j["verdict"] = r.holds ? "holds" : "violated";
    j["tolerance"] = r.tolerance;
    j["domain"] = r.domain;
    if (!r.holds) {
      json w;
      w["situation"] = r.witness.situation;
      if (r.witness.situation_b >= 0) w["situation_b"] = r.witness.situation_b;
      w["coalition"] = coalition_key(r.witness.coalition);
      if (r.witness.coalition_b) w["coalition_b"] = coalition_key(r.witness.coalition_b);
      if (r.witness.edge_i) w["edge"] = json::array({r.witness.edge_i, r.witness.edge_j});
      if (r.axiom == Axiom::Linearity) {
        w["alpha"] = r.witness.alpha;
        w["beta"] = r.witness.beta;
      }
      w["residual"] = r.witness.residual;
      w["detail"] = r.witness.detail;
      j["witness"] = w;
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string independence_to_json(const std::vector<IndependenceEntry>& entries) {
  json arr = json::array();
  for (const IndependenceEntry& e : entries) {
    json j;
    j["index"] = e.index_name;
    j["target"] = to_string(e.target);
    j["as_expected"] = e.as_expected;
    json verdicts;
    for (const AxiomReport& r : e.reports) verdicts[to_string(r.axiom)] = r.holds ? "holds" : "violated";
    j["verdicts"] = verdicts;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace coalint
