#pragma once

#include <array>
#include <cstdint>

#include "dynmis/types.hpp"

namespace dynmis {

// Message vocabulary. The first block mirrors the protocol's own labels;
// the last four are simulator carriers for flows the protocol needs but the
// base vocabulary has no kind for (V' recruitment, leader stage signals,
// solver probability exchanges, solver mark/retire announcements).
enum class MsgKind : std::uint8_t {
  MisEnter,
  MisLeave,
  BecameHigh,
  BecameLow,
  CounterDec,
  WantEnter,
  TurnAssign,
  TurnRenumber,
  ParentOffer,
  HaveParent,
  DegreeQuery,
  DegreeSum,
  BucketQuery,
  BucketCount,
  MoveToLow,
  InVHPrime,
  VHPrimeExists,
  SeedBit,
  CondExpPartial,
  Timestamp,
  StatusOnInsert,
  RepairRecruit,
  RepairPhase,
  PValue,
  MarkBit,
};

enum class BitClass : std::uint8_t { ConstantBits, LogBits };

inline BitClass kind_bit_class(MsgKind k) {
  switch (k) {
    case MsgKind::TurnAssign:
    case MsgKind::TurnRenumber:
    case MsgKind::DegreeSum:
    case MsgKind::BucketQuery:
    case MsgKind::BucketCount:
    case MsgKind::MoveToLow:
    case MsgKind::SeedBit:
    case MsgKind::CondExpPartial:
    case MsgKind::Timestamp:
    case MsgKind::RepairPhase:
    case MsgKind::PValue:
      return BitClass::LogBits;
    default:
      return BitClass::ConstantBits;
  }
}

inline const char* to_string(MsgKind k) {
  switch (k) {
    case MsgKind::MisEnter: return "MisEnter";
    case MsgKind::MisLeave: return "MisLeave";
    case MsgKind::BecameHigh: return "BecameHigh";
    case MsgKind::BecameLow: return "BecameLow";
    case MsgKind::CounterDec: return "CounterDec";
    case MsgKind::WantEnter: return "WantEnter";
    case MsgKind::TurnAssign: return "TurnAssign";
    case MsgKind::TurnRenumber: return "TurnRenumber";
    case MsgKind::ParentOffer: return "ParentOffer";
    case MsgKind::HaveParent: return "HaveParent";
    case MsgKind::DegreeQuery: return "DegreeQuery";
    case MsgKind::DegreeSum: return "DegreeSum";
    case MsgKind::BucketQuery: return "BucketQuery";
    case MsgKind::BucketCount: return "BucketCount";
    case MsgKind::MoveToLow: return "MoveToLow";
    case MsgKind::InVHPrime: return "InVH'";
    case MsgKind::VHPrimeExists: return "VH'Exists";
    case MsgKind::SeedBit: return "SeedBit";
    case MsgKind::CondExpPartial: return "CondExpPartial";
    case MsgKind::Timestamp: return "Timestamp";
    case MsgKind::StatusOnInsert: return "StatusOnInsert";
    case MsgKind::RepairRecruit: return "RepairRecruit";
    case MsgKind::RepairPhase: return "RepairPhase";
    case MsgKind::PValue: return "PValue";
    case MsgKind::MarkBit: return "MarkBit";
  }
  return "?";
}

// A unit of CONGEST communication. `f` holds the semantic payload fields
// (meaning depends on kind); `payload_bits` is the charged width. The kind
// tag itself travels outside the payload (fixed 8 bits, not budget-checked).
// `ts` is the m_avg timestamp field, charged separately as log-class bits.
// `wide` marks payloads allowed to exceed B(n); they are charged as
// ceil(payload_bits / B(n)) messages.
struct Message {
  VertexId src = kNoVertex;
  VertexId dst = kNoVertex;
  MsgKind kind = MsgKind::StatusOnInsert;
  std::array<std::int64_t, 3> f{0, 0, 0};
  int payload_bits = 0;
  std::int64_t ts = -1;
  bool wide = false;

  bool has_ts() const { return ts >= 0; }
};

inline int payload_width(const std::array<std::int64_t, 3>& f, int nfields) {
  int w = 0;
  for (int i = 0; i < nfields; ++i) w += bit_width_i64(f[i]);
  return w;
}

// Number of charged messages: wide payloads fragment into B(n)-bit pieces.
inline int message_fragments(const Message& m, int budget) {
  if (!m.wide || m.payload_bits <= budget) return 1;
  return (m.payload_bits + budget - 1) / budget;
}

}  // namespace dynmis
