// Copyright 2026 The flexsusp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flexsusp/flow/flow_graph.hpp"

#include <cctype>

#include "flexsusp/errors.hpp"
#include "json_util.hpp"

namespace flexsusp {

using detail::json;

GroupWord GroupWord::generator(const std::string& name, long long multiple) {
  GroupWord w;
  w.add_term(name, multiple);
  return w;
}

void GroupWord::add_term(const std::string& name, long long c) {
  if (c == 0) return;
  long long& slot = terms_[name];
  slot += c;
  if (slot == 0) terms_.erase(name);
}

GroupWord GroupWord::parse(std::string_view text) {
  GroupWord w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "0") return w;
  bool any = false;
  while (true) {
    skip();
    if (i >= text.size()) break;
    long long sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      throw ParseError("expected '+' or '-' in group word '" + std::string(text) + "'");
    }
    long long mult = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mult = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        mult = mult * 10 + (text[i] - '0');
        ++i;
      }
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (i >= text.size() || !std::isalpha(static_cast<unsigned char>(text[i]))) {
      throw ParseError("expected a generator name in group word '" + std::string(text) + "'");
    }
    std::string name;
    while (i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      name += text[i++];
    }
    w.add_term(name, sign * mult);
    any = true;
  }
  if (!any) throw ParseError("empty group word");
  return w;
}

long long GroupWord::coefficient(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? 0 : it->second;
}

GroupWord& GroupWord::operator+=(const GroupWord& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, c);
  return *this;
}

GroupWord& GroupWord::operator-=(const GroupWord& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
  return *this;
}

GroupWord GroupWord::operator-() const { return GroupWord() - *this; }

GroupWord operator*(long long k, const GroupWord& w) {
  GroupWord out;
  for (const auto& [name, c] : w.terms_) out.add_term(name, k * c);
  return out;
}

std::string GroupWord::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [name, c] : terms_) {
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    long long m = c < 0 ? -c : c;
    if (m != 1) out += std::to_string(m);
    out += name;
  }
  return out;
}

int SectorTable::class_of_sector(int sector) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int s : classes[c]) {
      if (s == sector) return static_cast<int>(c);
    }
  }
  if (classes.empty()) return 0;
  throw InconsistentData("sector " + std::to_string(sector) + " belongs to no class");
}

CurvePoint evaluate(const GroupWord& word, const PointAssignment& assignment, int class_index) {
  const Cubic& curve = assignment.curve(class_index);
  CurvePoint acc;
  for (const auto& [name, c] : word.terms()) {
    auto it = assignment.generators.find(name);
    if (it == assignment.generators.end()) {
      throw DomainError("generator '" + name + "' has no assigned point");
    }
    acc = add(curve, acc, scalar_mul(curve, c, it->second));
  }
  return acc;
}

std::vector<std::array<CurvePoint, 4>> evaluate_table(const SectorTable& table,
                                                      const PointAssignment& assignment) {
  std::vector<std::array<CurvePoint, 4>> out;
  out.reserve(table.rows.size());
  for (int j = 1; j <= static_cast<int>(table.rows.size()); ++j) {
    int cls = table.class_of_sector(table.sector_of_row(j));
    std::array<CurvePoint, 4> pts;
    for (int c = 0; c < 4; ++c) pts[c] = evaluate(table.row(j)[c], assignment, cls);
    out.push_back(pts);
  }
  return out;
}

namespace {

std::string cell(int row, int col) {
  static const char* names[] = {"Q-", "Q+", "Q'-", "Q'+"};
  return "row " + std::to_string(row) + " " + names[col];
}

}  // namespace

CheckResult check_condition_A(const SectorTable& table, const PointAssignment& assignment) {
  CheckResult r{"condition_A"};
  auto pts = evaluate_table(table, assignment);
  const int n = static_cast<int>(pts.size());
  for (int j = 1; j <= n; ++j) {
    int k = j % n + 1;
    for (auto [here, there] : {std::pair{kQNext, kQPrev}, std::pair{kQPrimeNext, kQPrimePrev}}) {
      const CurvePoint& p = pts[j - 1][here];
      const CurvePoint& q = pts[k - 1][there];
      if (p.is_infinity() || q.is_infinity()) {
        r.fail(cell(j, here) + " or " + cell(k, there) + " is the point at infinity");
      } else if (p.x() != q.x()) {
        r.fail(cell(j, here) + " x=" + p.x().to_string() + " differs from " + cell(k, there) +
               " x=" + q.x().to_string());
      }
    }
  }
  return r;
}

CheckResult check_condition_B(const SectorTable& table, const PointAssignment& assignment) {
  CheckResult r{"condition_B"};
  auto pts = evaluate_table(table, assignment);
  for (int j = 1; j <= static_cast<int>(pts.size()); ++j) {
    const Cubic& curve = assignment.curve(table.class_of_sector(table.sector_of_row(j)));
    CurvePoint sum;
    for (const CurvePoint& p : pts[j - 1]) sum = add(curve, sum, p);
    if (!sum.is_infinity()) r.fail("row " + std::to_string(j) + " sums to " + to_json(sum));
  }
  return r;
}

CheckResult check_condition_C(const SectorTable& table, const PointAssignment& assignment) {
  CheckResult r{"condition_C"};
  auto pts = evaluate_table(table, assignment);
  const int n = static_cast<int>(pts.size());
  for (int cls = 0; cls < table.class_count(); ++cls) {
    const Cubic& curve = assignment.curve(cls);
    for (bool primed : {false, true}) {
      std::vector<CurvePoint> bag;
      for (int j = 1; j <= n; ++j) {
        if (table.class_of_sector(table.sector_of_row(j)) != cls) continue;
        for (int c : primed ? std::array{2, 3} : std::array{0, 1}) {
          const CurvePoint& p = pts[j - 1][c];
          if (p.is_infinity()) {
            r.fail(cell(j, c) + " is the point at infinity");
            continue;
          }
          Component want = primed ? Component::Bounded : Component::Unbounded;
          if (component(curve, p) != want) {
            r.fail(cell(j, c) + " x=" + p.x().to_string() + " lies on the " +
                   (primed ? "unbounded" : "bounded") + " component");
          }
          bag.push_back(p);
        }
      }
      std::vector<bool> used(bag.size(), false);
      for (std::size_t i = 0; i < bag.size(); ++i) {
        if (used[i]) continue;
        bool matched = false;
        for (std::size_t k = 0; k < bag.size() && !matched; ++k) {
          if (k != i && !used[k] && bag[k] == negate(bag[i])) {
            used[i] = used[k] = true;
            matched = true;
          }
        }
        if (!matched) {
          r.fail(std::string(primed ? "Q'" : "Q") + " point " + to_json(bag[i]) +
                 " has no negated partner");
        }
      }
    }
  }
  return r;
}

FlowMultigraph derive_flow_graph(const SectorTable& table) {
  FlowMultigraph g;
  g.n = table.n;
  const int n = static_cast<int>(table.rows.size());
  for (bool primed : {true, false}) {
    std::vector<std::pair<int, int>> slots;  // (row, col)
    for (int j = 1; j <= n; ++j) {
      for (int c : primed ? std::array{2, 3} : std::array{0, 1}) slots.emplace_back(j, c);
    }
    std::vector<bool> used(slots.size(), false);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (used[i]) continue;
      const GroupWord& w = table.row(slots[i].first)[slots[i].second];
      bool matched = false;
      for (std::size_t k = i + 1; k < slots.size() && !matched; ++k) {
        if (used[k] || table.row(slots[k].first)[slots[k].second] != -w) continue;
        used[i] = used[k] = true;
        g.edges.push_back({slots[i].first, slots[k].first, primed ? Factor::Primed : Factor::Plain, w});
        matched = true;
      }
      if (!matched) {
        throw InconsistentData("entry " + w.to_string() + " of " + cell(slots[i].first, slots[i].second) +
                               " has no negated partner");
      }
    }
  }
  return g;
}

CheckResult graph_structure_check(const FlowMultigraph& g) {
  CheckResult r{"graph_structure"};
  std::vector<int> primed(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<int> plain(static_cast<std::size_t>(g.n) + 1, 0);
  std::vector<GroupWord> net(static_cast<std::size_t>(g.n) + 1);
  for (const FlowEdge& e : g.edges) {
    if (e.from < 1 || e.from > g.n || e.to < 1 || e.to > g.n) {
      r.fail("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " leaves the vertex set");
      continue;
    }
    auto& count = e.factor == Factor::Primed ? primed : plain;
    ++count[e.from];
    ++count[e.to];
    net[e.to] += e.flow;
    net[e.from] -= e.flow;
  }
  for (int v = 1; v <= g.n; ++v) {
    int degree = primed[v] + plain[v];
    if (degree != 4) r.fail("vertex " + std::to_string(v) + " has degree " + std::to_string(degree));
    if (primed[v] != 2 || plain[v] != 2) {
      r.fail("vertex " + std::to_string(v) + " meets " + std::to_string(primed[v]) + " F' and " +
             std::to_string(plain[v]) + " F edges");
    }
    if (!net[v].is_zero()) {
      r.fail("net flow into vertex " + std::to_string(v) + " is " + net[v].to_string());
    }
  }
  return r;
}

bool rows_cancel_symbolically(const SectorTable& table) {
  for (const auto& row : table.rows) {
    GroupWord sum;
    for (const GroupWord& w : row) sum += w;
    if (!sum.is_zero()) return false;
  }
  return true;
}

namespace {

SectorTable table_of(const std::vector<std::array<const char*, 4>>& rows) {
  SectorTable t;
  t.n = static_cast<int>(rows.size());
  std::vector<int> all;
  for (const auto& row : rows) {
    std::array<GroupWord, 4> words;
    for (int c = 0; c < 4; ++c) words[c] = GroupWord::parse(row[c]);
    t.rows.push_back(words);
    all.push_back(static_cast<int>(all.size()) + 1);
  }
  t.classes.push_back(all);
  return t;
}

}  // namespace

Dataset builtin_hexagon() {
  Dataset d;
  d.table = table_of({{"C", "-A+B-C", "A", "-B"},
                      {"A-B+C", "-A+2B-C-D", "-B", "D"},
                      {"A-2B+C+D", "2B-C-2D", "D", "-A"},
                      {"-2B+C+2D", "A+B-C-2D", "-A", "B"},
                      {"-A-B+C+2D", "A-C-D", "B", "-D"},
                      {"-A+C+D", "-C", "-D", "A"}});
  d.assignment.curves.emplace_back(Rational(51), Rational(100));
  d.assignment.generators["A"] = CurvePoint(Rational(2), Rational(98));
  d.assignment.generators["B"] =
      CurvePoint(Rational::parse("4039540/762129"), Rational::parse("100768585960/665338617"));
  d.assignment.generators["C"] = CurvePoint(Rational(102), Rational(-102));
  d.assignment.generators["D"] = CurvePoint(Rational(30), Rational(-210));
  return d;
}

SectorTable builtin_octahedron_table() {
  return table_of({{"A", "B", "C", "-A-B-C"},
                   {"B", "-A", "A+B+C", "-2B-C"},
                   {"-A", "-B", "2B+C", "A-B-C"},
                   {"-B", "A", "-A+B+C", "-C"}});
}

namespace {

json word_json(const GroupWord& w) {
  json j = json::object();
  for (const auto& [k, c] : w.terms()) j[k] = c;
  return j;
}

GroupWord word_from(const json& j) {
  if (j.is_string()) return GroupWord::parse(j.get<std::string>());
  if (!j.is_object()) throw ParseError("expected a group word, got " + j.dump());
  GroupWord w;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number_integer()) throw ParseError("group word coefficient must be an integer");
    w += GroupWord::generator(k, v.get<long long>());
  }
  return w;
}

}  // namespace

std::string to_json(const GroupWord& w) { return word_json(w).dump(); }

std::string to_json(const SectorTable& t) {
  json j;
  j["n"] = t.n;
  j["classes"] = t.classes;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const GroupWord& w : row) r.push_back(word_json(w));
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump();
}

std::string to_json(const PointAssignment& a) {
  json j;
  json curves = json::array();
  for (const Cubic& c : a.curves) {
    curves.push_back({{"b_prime", c.b_prime().to_string()}, {"b", c.b().to_string()}});
  }
  j["curves"] = curves;
  json gens = json::object();
  for (const auto& [k, p] : a.generators) gens[k] = detail::point_json(p);
  j["generators"] = gens;
  return j.dump();
}

SectorTable table_from_json(std::string_view text) {
  json j = detail::parse_json(text);
  SectorTable t;
  t.n = detail::require(j, "n").get<int>();
  if (t.n < 3) throw ParseError("table needs n >= 3");
  if (j.contains("classes")) t.classes = j.at("classes").get<std::vector<std::vector<int>>>();
  const json& rows = detail::require(j, "rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != t.n) {
    throw ParseError("table needs exactly n rows");
  }
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != 4) throw ParseError("each table row needs four words");
    std::array<GroupWord, 4> words;
    for (std::size_t c = 0; c < 4; ++c) words[c] = word_from(row[c]);
    t.rows.push_back(words);
  }
  return t;
}

PointAssignment assignment_from_json(std::string_view text) {
  json j = detail::parse_json(text);
  PointAssignment a;
  for (const json& c : detail::require(j, "curves")) {
    a.curves.emplace_back(detail::rational_from(detail::require(c, "b_prime")),
                          detail::rational_from(detail::require(c, "b")));
  }
  for (const auto& [k, v] : detail::require(j, "generators").items()) {
    CurvePoint p = detail::point_from(v);
    for (const Cubic& c : a.curves) {
      if (!contains(c, p)) throw DomainError("generator " + k + " is not on its curve");
    }
    a.generators[k] = p;
  }
  return a;
}

}  // namespace flexsusp
