#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynmis/graph.hpp"
#include "dynmis/message.hpp"
#include "dynmis/stats.hpp"
#include "dynmis/types.hpp"

namespace dynmis {

struct BitBudgetViolation : EngineViolation {
  using EngineViolation::EngineViolation;
};
struct NonNeighborSend : EngineViolation {
  using EngineViolation::EngineViolation;
};

struct EngineConfig {
  Mode mode = Mode::MAvg;
  SolverKind solver = SolverKind::Ggr20Sim;
  std::int64_t round_cap = 1'000'000;
  std::int64_t ts_modulus = std::int64_t{1} << 48;
  // derand phase cap; breaching it is a protocol failure surfaced to tests
  std::int64_t solver_phase_cap = 0;  // 0 = auto: 24 + 12*ceil(log2(n+1))
};

// Synchronous round executor with local-wakeup semantics.
//
// Protocol policy P supplies:
//   struct State;                        per-vertex protocol state
//   static void act(Engine<P>::Ctx&);    one round of one awake vertex
//
// Semantics: a vertex acting in round r sees exactly the messages sent to it
// in rounds < r, so every send completes before any receive is visible.
// Messages sent in round r reach recipients at the end of r; a sleeping
// recipient wakes and first acts in round r+1.
template <class P>
class Engine {
 public:
  using State = typename P::State;

  struct UpdateWake {
    UpdateOp op;
    VertexId peer;
    std::int64_t ts;
  };

  struct Task {
    int level = 0;
    std::int64_t seq = 0;
    VertexId vertex = kNoVertex;
    int kind = 0;
    std::int64_t a = 0;
    std::int64_t b = 0;
    bool flag = false;
  };

  Engine(DynamicGraph& g, EngineConfig cfg) : g_(g), cfg_(cfg) {
    auto n = static_cast<std::size_t>(g.n());
    st_.resize(n);
    inbox_.resize(n);
    wake_info_.resize(n);
    task_slot_.resize(n);
    awake_flag_.assign(n, 0);
    keep_flag_.assign(n, 0);
    woken_this_update_.assign(n, 0);
    woken_seen_.assign(n, 0);
    budget_ = bit_budget(g.n());
    if (cfg_.solver_phase_cap == 0)
      cfg_.solver_phase_cap = 24 + 12 * static_cast<std::int64_t>(ceil_log2(g.n() + 1));
    g_.set_guard(&guard_);
  }
  ~Engine() { g_.set_guard(nullptr); }
  Engine(const Engine&) = delete;

  class Ctx {
   public:
    Ctx(Engine& e, VertexId v) : e_(e), v_(v) {}

    VertexId id() const { return v_; }
    State& self() { return e_.st_[v_]; }
    const std::vector<Message>& inbox() const { return e_.inbox_[v_]; }
    const std::vector<VertexId>& neighbors() const { return e_.g_.neighbors(v_); }
    std::int64_t degree() const { return e_.g_.degree(v_); }
    bool first_act_of_update() const { return !e_.woken_seen_[v_]; }
    const UpdateWake* update_wake() const {
      return e_.wake_info_[v_] ? &*e_.wake_info_[v_] : nullptr;
    }
    const Task* task() const { return e_.task_slot_[v_] ? &*e_.task_slot_[v_] : nullptr; }

    Mode mode() const { return e_.cfg_.mode; }
    SolverKind solver() const { return e_.cfg_.solver; }
    std::int64_t n() const { return e_.g_.n(); }
    int budget() const { return e_.budget_; }
    std::int64_t round() const { return e_.round_; }
    std::int64_t ts_modulus() const { return e_.cfg_.ts_modulus; }
    std::int64_t solver_phase_cap() const { return e_.cfg_.solver_phase_cap; }

    void send(VertexId dst, MsgKind kind, std::int64_t f0 = 0, std::int64_t f1 = 0,
              std::int64_t f2 = 0, int nfields = 0, std::int64_t ts = -1,
              bool wide = false) {
      e_.stage_send(v_, dst, kind, {f0, f1, f2}, nfields, ts, wide);
    }
    void keep_awake() { e_.keep_flag_[v_] = 1; }
    void schedule_task(int kind, int level, std::int64_t a = 0, std::int64_t b = 0,
                       bool flag = false) {
      Task t;
      t.level = level;
      t.seq = ++e_.task_seq_;
      t.vertex = v_;
      t.kind = kind;
      t.a = a;
      t.b = b;
      t.flag = flag;
      e_.tasks_.push_back(t);
    }

    void note_mis_enter() { ++e_.cur_.mis_enters; }
    void note_mis_leave(bool was_low_at_wake) {
      ++e_.cur_.mis_leaves;
      if (was_low_at_wake) ++e_.cur_.low_mis_leaves;
    }
    void note_promotion() { ++e_.cur_.promotions; }
    void note_demotion() { ++e_.cur_.demotions; }
    void note_restart(int level) {
      // light/heavy split is filled in by the runner using the phase table
      ++e_.restarts_this_update_;
      e_.cur_.restart_chain_depth = std::max<std::int64_t>(e_.cur_.restart_chain_depth, level);
    }
    void charge_solver_rounds(std::int64_t extra) {
      if (extra > 0) e_.extra_round_charge_ += extra;
    }
    void submit_episode(RestartEpisodeRecord rec) {
      rec.update_index = e_.cur_.update_index;
      rec.seq = static_cast<std::int64_t>(e_.episodes_.size());
      rec.m_at_episode = e_.g_.m_current_raw();
      e_.episodes_.push_back(std::move(rec));
    }
    void submit_solver(SolverCallRecord rec) {
      rec.update_index = e_.cur_.update_index;
      e_.solver_calls_.push_back(std::move(rec));
    }

    // d'_v writes are funneled through here so the instrumentation hook can
    // assert they happen only at H->L transitions with value 2*d_v.
    void check_d_prime_write(std::int64_t value, bool at_demotion) {
      if (!at_demotion || value != 2 * degree())
        throw EngineViolation("d' write outside an H->L transition");
      ++e_.d_prime_writes_;
    }

    // Test hook: a deliberately non-local read, recorded by the access guard.
    std::int64_t spy_read_m_current() { return e_.g_.m_current(); }

   private:
    Engine& e_;
    VertexId v_;
  };

  // Drives rounds until quiescence; returns this update's accounting.
  UpdateStats run_update(const UpdateEvent& e) {
    if (!quiescent())
      throw EngineViolation("run_update while protocol not quiescent");
    cur_ = UpdateStats{};
    cur_.update_index = e.t;
    cur_.op = e.op;
    extra_round_charge_ = 0;
    restarts_this_update_ = 0;
    std::fill(woken_this_update_.begin(), woken_this_update_.end(), 0);
    std::fill(woken_seen_.begin(), woken_seen_.end(), 0);

    std::int64_t ts = e.t % cfg_.ts_modulus;
    wake_info_[e.u] = UpdateWake{e.op, e.v, ts};
    wake_info_[e.v] = UpdateWake{e.op, e.u, ts};
    wake_between_rounds(e.u);
    wake_between_rounds(e.v);

    while (true) {
      if (frontier_empty()) {
        if (tasks_.empty()) break;
        activate_next_task();
      }
      deliver_round();
      ++cur_.rounds;
      if (cur_.rounds > cfg_.round_cap)
        throw NonTermination("round cap exceeded at update t=" + std::to_string(e.t));
    }
    // cost-model adjustments (simulated ggr20) are charged on top of the
    // physical deliver_round count
    cur_.rounds += extra_round_charge_;
    cur_.m_current = g_.m_current_raw();
    cur_.restarts_light = restarts_this_update_;  // split later by the runner
    return cur_;
  }

  // One synchronous round. Returns number of charged message deliveries.
  int deliver_round() {
    ++round_;
    guard_.round = round_;
    std::vector<VertexId> acting = awake_ids_;
    for (VertexId v : acting) keep_flag_[v] = 0;
    for (VertexId v : acting) {
      sort_inbox(inbox_[v]);
      guard_.active_vertex = v;
      Ctx c(*this, v);
      P::act(c);
      guard_.active_vertex = kNoVertex;
      woken_seen_[v] = 1;
      inbox_[v].clear();
      wake_info_[v].reset();
      task_slot_[v].reset();
    }
    std::sort(staged_.begin(), staged_.end(), [](const Message& a, const Message& b) {
      return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t i = 1; i < staged_.size(); ++i) {
      if (staged_[i].src == staged_[i - 1].src && staged_[i].dst == staged_[i - 1].dst)
        throw EngineViolation("two messages to one neighbor in one round: " +
                              std::to_string(staged_[i].src) + "->" +
                              std::to_string(staged_[i].dst));
    }
    int delivered = 0;
    std::vector<VertexId> recipients;
    recipients.reserve(staged_.size());
    for (auto& m : staged_) {
      int frags = message_fragments(m, budget_);
      cur_.messages_total += frags;
      bool log_class = m.has_ts() || kind_bit_class(m.kind) == BitClass::LogBits || m.wide;
      if (log_class)
        cur_.messages_log_bits += frags;
      else
        cur_.messages_const_bits += frags;
      delivered += frags;
      VertexId dst = m.dst;
      recipients.push_back(dst);
      note_woken(dst);
      inbox_[dst].push_back(std::move(m));
    }
    staged_.clear();
    // awake set for the next round: actors with pending work or fresh mail,
    // plus newly woken recipients
    std::vector<VertexId> next;
    next.reserve(acting.size() + recipients.size());
    for (VertexId v : acting) {
      if (keep_flag_[v] || !inbox_[v].empty())
        next.push_back(v);
      else
        awake_flag_[v] = 0;
    }
    for (VertexId dst : recipients) {
      if (!awake_flag_[dst]) {
        awake_flag_[dst] = 1;
        next.push_back(dst);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    awake_ids_ = std::move(next);
    return delivered;
  }

  bool frontier_empty() const { return awake_ids_.empty() && staged_.empty(); }
  bool quiescent() const { return frontier_empty() && tasks_.empty(); }

  const State& state(VertexId v) const { return st_[v]; }
  State& state_mut(VertexId v) { return st_[v]; }  // tests and injection only
  const DynamicGraph& graph() const { return g_; }
  const EngineConfig& config() const { return cfg_; }
  std::int64_t round() const { return round_; }
  int budget() const { return budget_; }

  const std::vector<RestartEpisodeRecord>& episodes() const { return episodes_; }
  const std::vector<SolverCallRecord>& solver_calls() const { return solver_calls_; }

  // Locality audit over the run so far: empty result = verdict OK.
  const std::vector<AccessGuard::Breach>& locality_audit() const { return guard_.breaches; }

  std::int64_t d_prime_writes() const { return d_prime_writes_; }

  // Test/injection helper: wake a vertex with a task outside an update.
  void inject_task(VertexId v, int kind, int level, std::int64_t a = 0, std::int64_t b = 0,
                   bool flag = false) {
    Task t;
    t.level = level;
    t.seq = ++task_seq_;
    t.vertex = v;
    t.kind = kind;
    t.a = a;
    t.b = b;
    t.flag = flag;
    tasks_.push_back(t);
  }

  // Drive rounds to quiescence outside run_update (injection tests, solver
  // harness). Returns rounds consumed.
  std::int64_t drain(std::int64_t cap = 1'000'000) {
    std::int64_t rounds = 0;
    cur_ = UpdateStats{};
    std::fill(woken_this_update_.begin(), woken_this_update_.end(), 0);
    std::fill(woken_seen_.begin(), woken_seen_.end(), 0);
    while (true) {
      if (frontier_empty()) {
        if (tasks_.empty()) break;
        activate_next_task();
      }
      deliver_round();
      ++rounds;
      if (rounds > cap) throw NonTermination("drain cap exceeded");
    }
    return rounds;
  }
  const UpdateStats& last_stats() const { return cur_; }

 private:
  void note_woken(VertexId v) {
    if (!woken_this_update_[v]) {
      woken_this_update_[v] = 1;
      ++cur_.wakeups;
    }
  }

  void wake_between_rounds(VertexId v) {
    note_woken(v);
    if (awake_flag_[v]) return;
    awake_flag_[v] = 1;
    awake_ids_.insert(std::lower_bound(awake_ids_.begin(), awake_ids_.end(), v), v);
  }

  void stage_send(VertexId src, VertexId dst, MsgKind kind,
                  std::array<std::int64_t, 3> f, int nfields, std::int64_t ts,
                  bool wide) {
    if (dst >= st_.size() || !g_.has_edge(src, dst))
      throw NonNeighborSend("send along non-edge " + std::to_string(src) + "->" +
                            std::to_string(dst));
    Message m;
    m.src = src;
    m.dst = dst;
    m.kind = kind;
    m.f = f;
    m.payload_bits = payload_width(f, nfields);
    m.wide = wide;
    if (cfg_.mode == Mode::MAvg && ts >= 0) {
      if (ts >= cfg_.ts_modulus) throw BitBudgetViolation("timestamp exceeds modulus");
      m.ts = ts;
    }
    if (!wide) {
      int limit = kind_bit_class(kind) == BitClass::ConstantBits ? 8 : budget_;
      if (m.payload_bits > limit)
        throw BitBudgetViolation(std::string("payload too wide for ") + to_string(kind) +
                                 ": " + std::to_string(m.payload_bits) + " > " +
                                 std::to_string(limit));
    }
    staged_.push_back(std::move(m));
  }

  void activate_next_task() {
    // depth-first: deepest level first, then smallest vertex id, then order
    std::size_t best = 0;
    for (std::size_t i = 1; i < tasks_.size(); ++i) {
      const Task &a = tasks_[i], &b = tasks_[best];
      if (a.level != b.level ? a.level > b.level
          : a.vertex != b.vertex ? a.vertex < b.vertex
                                 : a.seq < b.seq)
        best = i;
    }
    Task t = tasks_[best];
    tasks_.erase(tasks_.begin() + static_cast<std::ptrdiff_t>(best));
    task_slot_[t.vertex] = t;
    wake_between_rounds(t.vertex);
  }

  static void sort_inbox(std::vector<Message>& box) {
    std::sort(box.begin(), box.end(), [](const Message& a, const Message& b) {
      if (a.src != b.src) return a.src < b.src;
      if (a.kind != b.kind) return a.kind < b.kind;
      return a.f < b.f;
    });
  }

  DynamicGraph& g_;
  EngineConfig cfg_;
  int budget_ = 0;

  std::vector<State> st_;
  std::vector<std::vector<Message>> inbox_;
  std::vector<std::optional<UpdateWake>> wake_info_;
  std::vector<std::optional<Task>> task_slot_;
  std::vector<std::uint8_t> awake_flag_, keep_flag_, woken_this_update_, woken_seen_;
  std::vector<VertexId> awake_ids_;
  std::vector<Message> staged_;
  std::vector<Task> tasks_;
  std::int64_t task_seq_ = 0;

  std::int64_t round_ = 0;
  UpdateStats cur_{};
  std::int64_t extra_round_charge_ = 0;
  std::int64_t restarts_this_update_ = 0;
  std::int64_t d_prime_writes_ = 0;

  AccessGuard guard_;
  std::vector<RestartEpisodeRecord> episodes_;
  std::vector<SolverCallRecord> solver_calls_;
};

}  // namespace dynmis
