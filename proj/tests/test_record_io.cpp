#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cogrowth/csv.hpp"
#include "cogrowth/record_io.hpp"

using namespace cogrowth;
namespace fs = std::filesystem;

namespace {

WalkParams small_params(std::uint64_t seed) {
  WalkParams p;
  p.alpha = 3.0;
  p.beta = 0.3;
  p.steps = 50000;
  p.segments = 5;
  p.seed = seed;
  return p;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("cogrowth_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("histogram CSV layout") {
  const WalkRecord rec = run_walk(preset_from_id("zk:2"), small_params(4));
  std::ostringstream out;
  write_record_csv(rec, out);
  const CsvTable t = parse_csv(out.str());
  REQUIRE(t.header.size() == 7);
  CHECK(t.header[0] == "n");
  CHECK(t.header[1] == "W_n");
  CHECK(t.header[6] == "x_5");
  REQUIRE(t.rows.size() == rec.histogram.size());
  std::uint64_t total = 0;
  for (std::size_t n = 0; n < t.rows.size(); ++n) {
    CHECK(std::stoull(t.rows[n][0]) == n);
    std::uint64_t row_sum = 0;
    for (std::size_t i = 2; i < 7; ++i) row_sum += std::stoull(t.rows[n][i]);
    CHECK(std::stoull(t.rows[n][1]) == row_sum);
    total += row_sum;
  }
  CHECK(total == rec.params.steps / rec.params.stride);
}

TEST_CASE("records survive a save/load round trip") {
  TempDir dir;
  const WalkRecord rec = run_walk(preset_from_id("bs:1:2"), small_params(9));
  save_record(rec, dir.path / "walk");
  const WalkRecord back = load_record(dir.path / "walk.csv");
  CHECK(back.histogram == rec.histogram);
  CHECK(back.segment_histograms == rec.segment_histograms);
  CHECK(back.presentation == rec.presentation);
  CHECK(back.parity_even == rec.parity_even);
  CHECK(back.relator_acceptance == rec.relator_acceptance);
  CHECK(back.proposal_stats.insertions_accepted == rec.proposal_stats.insertions_accepted);
  CHECK(back.proposal_stats.conjugations_proposed == rec.proposal_stats.conjugations_proposed);
  CHECK(back.steps_done == rec.steps_done);
  CHECK(back.max_length_seen == rec.max_length_seen);
  CHECK(back.status == rec.status);
  CHECK(back.params.alpha == rec.params.alpha);
  CHECK(back.params.beta == rec.params.beta);
  CHECK(back.params.seed == rec.params.seed);
  CHECK(back.params.segments == rec.params.segments);

  // Saving what was loaded reproduces the histogram file byte for byte.
  save_record(back, dir.path / "again");
  CHECK(slurp(dir.path / "walk.csv") == slurp(dir.path / "again.csv"));
}

TEST_CASE("identical seeds give byte-identical outputs") {
  TempDir dir;
  const Presentation f = preset_from_id("thompson-f");
  save_record(run_walk(f, small_params(21)), dir.path / "one");
  save_record(run_walk(f, small_params(21)), dir.path / "two");
  save_record(run_walk(f, small_params(22)), dir.path / "three");
  CHECK(slurp(dir.path / "one.csv") == slurp(dir.path / "two.csv"));
  CHECK(slurp(dir.path / "one.csv") != slurp(dir.path / "three.csv"));
  CHECK(record_sidecar(run_walk(f, small_params(21)), false) == record_sidecar(run_walk(f, small_params(21)), false));
}

TEST_CASE("loading rejects malformed records") {
  TempDir dir;
  const WalkRecord rec = run_walk(preset_from_id("zk:2"), small_params(2));
  save_record(rec, dir.path / "ok");
  CHECK_THROWS(load_record(dir.path / "absent.csv"));

  fs::copy_file(dir.path / "ok.csv", dir.path / "orphan.csv");
  CHECK_THROWS(load_record(dir.path / "orphan.csv"));

  // Segment count in the sidecar disagrees with the CSV columns.
  fs::copy_file(dir.path / "ok.csv", dir.path / "seg.csv");
  auto side = record_sidecar(rec);
  side["params"]["segments"] = 7;
  std::ofstream(dir.path / "seg.json") << side.dump();
  CHECK_THROWS(load_record(dir.path / "seg.csv"));

  std::ofstream(dir.path / "rows.csv") << "n,W_n,x_1,x_2,x_3,x_4,x_5\n1,0,0,0,0,0,0\n";
  fs::copy_file(dir.path / "ok.json", dir.path / "rows.json");
  CHECK_THROWS(load_record(dir.path / "rows.csv"));

  std::ofstream(dir.path / "bad.csv") << "n,W_n,x_1\n0,1\n";
  fs::copy_file(dir.path / "ok.json", dir.path / "bad.json");
  CHECK_THROWS(load_record(dir.path / "bad.csv"));
}

TEST_CASE("csv parsing") {
  const CsvTable t = parse_csv("# comment\n a , b\r\n1,2\n\n# another\n3, 4\n");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][1] == "4");
  CHECK(t.column("b") == 1);
  CHECK_THROWS(t.column("c"));
  CHECK_THROWS(parse_csv("# only comments\n"));
  CHECK_THROWS(parse_csv("a,b\n1\n"));
  CHECK(parse_csv("a,b\n1,\n").rows[0][1].empty());
}

TEST_CASE("number formatting") {
  CHECK(format_sci(20.0) == "2.00000e+01");
  CHECK(format_sci(1.392e14) == "1.39200e+14");
  CHECK(format_sci(-0.000123456789) == "-1.23457e-04");
  for (double v : {0.1, 1.0 / 3.0, 2.718281828459045, 1e-300, 6.02214076e23}) {
    CHECK(std::stod(format_exact(v)) == v);
  }
}
