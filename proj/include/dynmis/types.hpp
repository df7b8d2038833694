#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynmis {

using VertexId = std::uint32_t;
constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

enum class UpdateOp : std::uint8_t { Insert, Delete };

// One edge update. Timestamps are 1-based stream indices.
struct UpdateEvent {
  UpdateOp op;
  VertexId u;
  VertexId v;
  std::int64_t t;
};

enum class Mode : std::uint8_t { MMax, MAvg };

enum class SolverKind : std::uint8_t { GreedyById, Ggr20Sim, DerandGhaffari };

inline const char* to_string(Mode m) { return m == Mode::MMax ? "m_max" : "m_avg"; }
inline const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::GreedyById: return "greedy";
    case SolverKind::Ggr20Sim: return "ggr20-sim";
    case SolverKind::DerandGhaffari: return "derand-ghaffari";
  }
  return "?";
}

inline bool parse_mode(const std::string& s, Mode& out) {
  if (s == "m_max" || s == "mmax") { out = Mode::MMax; return true; }
  if (s == "m_avg" || s == "mavg") { out = Mode::MAvg; return true; }
  return false;
}
inline bool parse_solver(const std::string& s, SolverKind& out) {
  if (s == "greedy") { out = SolverKind::GreedyById; return true; }
  if (s == "ggr20-sim") { out = SolverKind::Ggr20Sim; return true; }
  if (s == "derand-ghaffari") { out = SolverKind::DerandGhaffari; return true; }
  return false;
}

struct IllegalUpdate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonTermination : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EngineViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact integer threshold tests; fractional powers are never evaluated in
// floating point on protocol paths.

// a^3 > b
inline bool cube_gt(std::int64_t a, std::int64_t b) {
  if (a < 0) return false;
  return static_cast<__int128>(a) * a * a > static_cast<__int128>(b);
}
// a^3 <= b
inline bool cube_leq(std::int64_t a, std::int64_t b) { return !cube_gt(a, b); }

// a <= c * b^(2/3), i.e. a^3 <= c^3 * b^2
inline bool leq_scaled_pow23(std::int64_t a, std::int64_t c, std::int64_t b) {
  if (a < 0) return true;
  return static_cast<__int128>(a) * a * a <=
         static_cast<__int128>(c) * c * c * b * b;
}
// a < c * b^(2/3)
inline bool lt_scaled_pow23(std::int64_t a, std::int64_t c, std::int64_t b) {
  if (a < 0) return true;
  return static_cast<__int128>(a) * a * a <
         static_cast<__int128>(c) * c * c * b * b;
}
// a <= c * b^(1/3), i.e. a^3 <= c^3 * b
inline bool leq_scaled_pow13(std::int64_t a, std::int64_t c, std::int64_t b) {
  if (a < 0) return true;
  return static_cast<__int128>(a) * a * a <= static_cast<__int128>(c) * c * c * b;
}

inline int bit_width_i64(std::int64_t v) {
  std::uint64_t x = v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
  int w = 0;
  while (x) { ++w; x >>= 1; }
  return w == 0 ? 1 : w + (v < 0 ? 1 : 0);
}

inline int ceil_log2(std::int64_t v) {
  int w = 0;
  std::int64_t x = 1;
  while (x < v) { x <<= 1; ++w; }
  return w;
}

// Payload budget B(n) = ceil(2*log2(n+1)) bits for LogBits messages.
inline int bit_budget(std::int64_t n) {
  std::int64_t sq = (n + 1) * (n + 1);
  return ceil_log2(sq);
}

// Timestamp difference under modular wraparound: if now < then, the counter
// wrapped and the true gap is now + c - then.
inline std::int64_t ts_diff(std::int64_t now, std::int64_t then, std::int64_t modulus) {
  std::int64_t d = now - then;
  if (d < 0) d += modulus;
  return d;
}

}  // namespace dynmis
