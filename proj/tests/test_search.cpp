#include "monicdyn/search.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace monicdyn;

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_path(const std::string &name) {
  const auto p = std::filesystem::temp_directory_path() / ("monicdyn_" + name);
  std::filesystem::remove(p);
  return p.string();
}

std::vector<Quad> representatives(const SearchResult &r) {
  std::vector<Quad> out;
  for (const auto &c : r.classes)
    out.push_back(c.representative);
  return out;
}

} // namespace

TEST_CASE("enumeration order") {
  for (long box : {0L, 1L, 2L, 3L}) {
    CHECK(box_size(box) == tuple_count(box));
    Quad prev{};
    for (std::uint64_t i = 0; i < box_size(box); ++i) {
      const Quad t = tuple_at(box, i);
      CHECK(t[0] % 2 == 0);
      CHECK(t[3] % 2 == 0);
      CHECK(index_of(box, t) == i);
      if (i > 0)
        CHECK(prev < t);
      prev = t;
    }
  }
  CHECK(tuple_at(2, 0) == Quad{-2, -2, -2, -2});
  CHECK_THROWS(index_of(2, {1, 0, 0, 0}));
}

TEST_CASE("box 0 is the power map") {
  const auto r = search_box({0});
  CHECK(r.complete);
  CHECK(r.examined == 1);
  CHECK(r.unknown() == 0);
  CHECK(representatives(r) == std::vector<Quad>{{0, 0, 0, 0}});
}

TEST_CASE("box 2 gives the six classes") {
  SearchConfig cfg{2};
  cfg.threads = 2;
  const auto r = search_box(cfg);
  CHECK(r.examined == 225);
  CHECK(r.unknown() == 0);
  std::vector<Quad> reps = representatives(r);
  std::vector<Quad> six = {{0, 0, 0, 0}, {0, 0, 0, -2}, {-2, 0, 0, -2}, {0, 0, -1, 0}, {0, 0, -2, 0}, {0, -2, -2, 0}};
  std::sort(six.begin(), six.end());
  CHECK(reps == six);

  // No PCF tuple ever receives an escape certificate.
  for (const auto &s : r.survivors) {
    const auto t = s.tuple;
    CHECK(nonpcf_certify(PolyMap::quadratic(t[0], t[1], t[2], t[3])).verdict != Verdict::NotPcfProven);
  }

  const auto serial = search_box_serial(cfg);
  CHECK(serial.survivors == r.survivors);
  CHECK(serial.not_pcf == r.not_pcf);
  CHECK(to_csv(serial) == to_csv(r));
  for (int threads : {1, 4}) {
    cfg.threads = threads;
    CHECK(to_csv(search_box(cfg)) == to_csv(r));
  }
}

TEST_CASE("checkpoint resume") {
  SearchConfig cfg{2};
  cfg.chunk_size = 16;
  cfg.checkpoint = temp_path("whole.jsonl");
  const auto whole = search_box(cfg);
  const std::string whole_log = slurp(cfg.checkpoint);

  cfg.checkpoint = temp_path("split.jsonl");
  cfg.stop_after_chunks = 3;
  const auto part = search_box(cfg);
  CHECK(!part.complete);
  CHECK(part.examined == 48);
  {
    // A chunk interrupted mid-write leaves survivors without a cursor.
    std::ofstream out(cfg.checkpoint, std::ios::app);
    out << R"({"survivor":[0,0,0,0],"verdict":"PCF_PROVEN","witness":{"place":"orbit","step":1}})" << '\n';
  }
  cfg.stop_after_chunks = 5;
  CHECK(!search_box(cfg).complete);
  cfg.stop_after_chunks.reset();
  cfg.threads = 3;
  const auto resumed = search_box(cfg);
  CHECK(resumed.complete);
  CHECK(to_csv(resumed) == to_csv(whole));
  CHECK(resumed.not_pcf == whole.not_pcf);
  CHECK(slurp(cfg.checkpoint) == whole_log);

  // Resuming a finished run recomputes nothing.
  CHECK(to_csv(search_box(cfg)) == to_csv(whole));

  SearchConfig other = cfg;
  other.budgets.max_steps = 5;
  CHECK_THROWS_AS(search_box(other), CheckpointError);
  std::filesystem::remove(cfg.checkpoint);
  std::filesystem::remove(temp_path("whole.jsonl"));
}

TEST_CASE("csv layout") {
  const auto r = search_box({0});
  CHECK(to_csv(r) == "tuple,verdict,witness_place,witness_step,class_representative\n"
                     "\"0,0,0,0\",PCF_PROVEN,orbit,1,\"0,0,0,0\"\n");
}
