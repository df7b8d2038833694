#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dynmis/types.hpp"

namespace dynmis {

// Records reads of global graph quantities made while the engine is executing
// a vertex handler. Vertex logic may only touch its own state, its inbox and
// its incident edges; anything else is a locality breach.
struct AccessGuard {
  VertexId active_vertex = kNoVertex;
  struct Breach {
    VertexId vertex;
    std::int64_t round;
    std::string what;
  };
  std::vector<Breach> breaches;
  std::int64_t round = 0;

  void note(const char* what) {
    if (active_vertex != kNoVertex) breaches.push_back({active_vertex, round, what});
  }
};

// Ground-truth dynamic graph. Mutated only by the update loop; the engine and
// verifier read it, vertex logic never does (enforced via AccessGuard).
class DynamicGraph {
 public:
  explicit DynamicGraph(std::int64_t n) : adj_(static_cast<std::size_t>(n)) {}

  std::int64_t n() const { return static_cast<std::int64_t>(adj_.size()); }

  std::int64_t m_current() const {
    if (guard_) guard_->note("m_current");
    return m_current_;
  }
  std::int64_t m_max() const {
    if (guard_) guard_->note("m_max");
    return m_max_;
  }
  // Unguarded variants for engine/verifier internals.
  std::int64_t m_current_raw() const { return m_current_; }
  std::int64_t m_max_raw() const { return m_max_; }

  const std::vector<VertexId>& neighbors(VertexId v) const {
    if (guard_ && guard_->active_vertex != kNoVertex && guard_->active_vertex != v)
      guard_->note("neighbors(other)");
    return adj_[v];
  }
  std::int64_t degree(VertexId v) const {
    if (guard_ && guard_->active_vertex != kNoVertex && guard_->active_vertex != v)
      guard_->note("degree(other)");
    return static_cast<std::int64_t>(adj_[v].size());
  }

  bool has_edge(VertexId u, VertexId v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  // Applies one update; returns the wake set {u, v}.
  std::pair<VertexId, VertexId> apply_update(const UpdateEvent& e) {
    check_ids(e.u, e.v);
    if (e.u == e.v) throw IllegalUpdate("self-loop update");
    if (e.op == UpdateOp::Insert) {
      if (has_edge(e.u, e.v)) throw IllegalUpdate("duplicate insert " + edge_str(e));
      insert_sorted(adj_[e.u], e.v);
      insert_sorted(adj_[e.v], e.u);
      ++m_current_;
      m_max_ = std::max(m_max_, m_current_);
    } else {
      if (!has_edge(e.u, e.v)) throw IllegalUpdate("delete of missing edge " + edge_str(e));
      erase_sorted(adj_[e.u], e.v);
      erase_sorted(adj_[e.v], e.u);
      --m_current_;
    }
    return {e.u, e.v};
  }

  void set_guard(AccessGuard* g) { guard_ = g; }

 private:
  static std::string edge_str(const UpdateEvent& e) {
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ") at t=" + std::to_string(e.t);
  }
  void check_ids(VertexId u, VertexId v) const {
    if (u >= adj_.size() || v >= adj_.size())
      throw IllegalUpdate("vertex id out of range: " + std::to_string(std::max(u, v)));
  }
  static void insert_sorted(std::vector<VertexId>& a, VertexId x) {
    a.insert(std::lower_bound(a.begin(), a.end(), x), x);
  }
  static void erase_sorted(std::vector<VertexId>& a, VertexId x) {
    a.erase(std::lower_bound(a.begin(), a.end(), x));
  }

  std::vector<std::vector<VertexId>> adj_;
  std::int64_t m_current_ = 0;
  std::int64_t m_max_ = 0;
  AccessGuard* guard_ = nullptr;
};

// Update-stream text format: one op per line, "+ u v" or "- u v",
// '#' starts a comment line. Timestamps are implicit line order (1-based).
inline std::vector<UpdateEvent> load_stream(std::istream& in) {
  std::vector<UpdateEvent> out;
  std::string line;
  std::int64_t lineno = 0;
  std::int64_t t = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    std::istringstream ls(line);
    std::string op;
    long long a = -1, b = -1;
    if (!(ls >> op >> a >> b) || (op != "+" && op != "-"))
      throw ParseError("line " + std::to_string(lineno) + ": expected '+|- u v'");
    if (a < 0 || b < 0)
      throw ParseError("line " + std::to_string(lineno) + ": negative vertex id");
    if (a == b) throw ParseError("line " + std::to_string(lineno) + ": self-loop");
    std::string rest;
    if (ls >> rest && !rest.empty() && rest[0] != '#')
      throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
    ++t;
    out.push_back({op == "+" ? UpdateOp::Insert : UpdateOp::Delete,
                   static_cast<VertexId>(a), static_cast<VertexId>(b), t});
  }
  return out;
}

inline std::vector<UpdateEvent> load_stream_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open stream file: " + path);
  return load_stream(f);
}

inline void write_stream(std::ostream& out, const std::vector<UpdateEvent>& evs) {
  for (const auto& e : evs)
    out << (e.op == UpdateOp::Insert ? "+ " : "- ") << e.u << " " << e.v << "\n";
}

}  // namespace dynmis
