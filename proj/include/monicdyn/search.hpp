#pragma once

#include "monicdyn/pcf.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace monicdyn {

class CheckpointError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SearchConfig {
  long box = 0;
  Budgets budgets;
  /// 0 leaves the OpenMP default.
  int threads = 0;
  /// Line-delimited JSON; resumed from if it already exists.
  std::string checkpoint;
  std::uint64_t chunk_size = 1024;
  /// Stop after this many chunks in this run (simulates an interruption).
  std::optional<std::uint64_t> stop_after_chunks;
};

struct TupleResult {
  Quad tuple{};
  Verdict verdict = Verdict::Unknown;
  int step = 0;
  /// "inf", a prime, or "orbit" for PCF certificates; empty for UNKNOWN.
  std::string witness_place;
  friend bool operator==(const TupleResult &, const TupleResult &) = default;
};

struct SearchResult {
  long box = 0;
  std::uint64_t total = 0;
  std::uint64_t examined = 0;
  /// NOT_PCF counts by witness place.
  std::map<std::string, std::uint64_t> not_pcf;
  /// PCF and UNKNOWN tuples in enumeration order.
  std::vector<TupleResult> survivors;
  /// Conjugacy classes of the PCF survivors.
  std::vector<ConjugacyClass> classes;
  bool complete = false;

  std::uint64_t unknown() const;
  /// Representative of the class containing a PCF tuple.
  std::optional<Quad> representative_of(const Quad &t) const;
};

/// Lexicographic enumeration of the box with a and d even.
std::uint64_t box_size(long box);
Quad tuple_at(long box, std::uint64_t index);
std::uint64_t index_of(long box, const Quad &t);

/// Classifies one tuple; NOT_PCF results carry only the witness place.
TupleResult classify_tuple(const Quad &t, const Budgets &budgets);

/// Chunked parallel search with ordered merge and checkpointing.
SearchResult search_box(const SearchConfig &cfg);

/// Single-threaded reference without checkpoints.
SearchResult search_box_serial(const SearchConfig &cfg);

/// CSV: tuple, verdict, witness_place, witness_step, class_representative.
std::string to_csv(const SearchResult &r);

} // namespace monicdyn
