#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dynmis/types.hpp"

namespace dynmis {

// Per-update accounting. rounds = number of engine rounds the update consumed
// (restart chains included); wakeups = distinct vertices woken at least once.
struct UpdateStats {
  std::int64_t update_index = 0;
  UpdateOp op = UpdateOp::Insert;
  std::int64_t rounds = 0;
  std::int64_t messages_total = 0;
  std::int64_t messages_log_bits = 0;
  std::int64_t messages_const_bits = 0;
  std::int64_t wakeups = 0;
  std::int64_t restarts_light = 0;
  std::int64_t restarts_heavy = 0;
  std::int64_t restart_chain_depth = 0;
  std::int64_t mis_enters = 0;
  std::int64_t mis_leaves = 0;
  std::int64_t low_mis_leaves = 0;
  std::int64_t m_current = 0;
  std::int64_t promotions = 0;  // L->H moves this update
  std::int64_t demotions = 0;   // H->L moves this update
};

inline void write_stats_csv_header(std::ostream& os) {
  os << "update_index,op,rounds,msgs_total,msgs_log,msgs_const,wakeups,"
        "restarts_light,restarts_heavy,chain_depth,mis_enters,mis_leaves,m_current\n";
}

inline void write_stats_csv_row(std::ostream& os, const UpdateStats& s) {
  os << s.update_index << ',' << (s.op == UpdateOp::Insert ? '+' : '-') << ','
     << s.rounds << ',' << s.messages_total << ',' << s.messages_log_bits << ','
     << s.messages_const_bits << ',' << s.wakeups << ',' << s.restarts_light << ','
     << s.restarts_heavy << ',' << s.restart_chain_depth << ',' << s.mis_enters << ','
     << s.mis_leaves << ',' << s.m_current << '\n';
}

// One Algorithm 4-6 episode as observed by the engine. The verifier pairs it
// with ground truth (m at episode time, phase index) for the lemma checks.
struct RestartEpisodeRecord {
  std::int64_t update_index = 0;
  std::int64_t seq = 0;           // activation order within the run
  VertexId leader = kNoVertex;
  int chain_level = 0;
  std::int64_t v_prime_size = 0;  // |V'| counted over the BFS tree
  std::int64_t e_prime_size = 0;  // induced edges within V'
  std::int64_t degree_sum = 0;    // S
  std::int64_t marked = 0;        // Y
  std::int64_t buckets_used = 0;
  std::int64_t remaining_total = 0;  // |V'| - Y
  std::int64_t remaining_high = 0;   // high-degree members left after moves
  bool vacuous = false;              // S == 0 or singleton V', loop skipped
  std::int64_t m_at_episode = 0;     // filled by the runner from ground truth
  bool ran_bucket_loop = false;
  std::vector<std::pair<VertexId, std::int64_t>> movers;  // (id, degree at move)
  bool unreached_members = false;  // recruited vertices the tree never parented
};

// One static-MIS solver invocation inside a repair.
struct SolverCallRecord {
  std::int64_t update_index = 0;
  SolverKind kind = SolverKind::GreedyById;
  std::int64_t candidates = 0;   // |V_H'|
  std::int64_t subgraph_size = 0;  // candidates + relays reachable in tree
  std::int64_t tree_depth = 0;   // leader distance D
  std::int64_t rounds = 0;       // engine rounds the solver stage consumed
  std::int64_t charged_rounds = 0;  // after any cost-model adjustment
  std::int64_t phases = 0;       // derand phases (0 for greedy routes)
};

}  // namespace dynmis
