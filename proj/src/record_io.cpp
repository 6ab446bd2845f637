#include "cogrowth/record_io.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include "cogrowth/csv.hpp"

namespace cogrowth {

using nlohmann::json;

void write_record_csv(const WalkRecord& record, std::ostream& out) {
  out << "n,W_n";
  for (std::size_t i = 1; i <= record.segment_histograms.size(); ++i) out << ",x_" << i;
  out << '\n';
  for (std::size_t n = 0; n < record.histogram.size(); ++n) {
    out << n << ',' << record.histogram[n];
    for (const auto& h : record.segment_histograms) out << ',' << (n < h.size() ? h[n] : 0);
    out << '\n';
  }
}

json params_to_json(const WalkParams& p) {
  return json{{"alpha", p.alpha},   {"beta", p.beta},     {"steps", p.steps},
              {"segments", p.segments}, {"seed", p.seed}, {"stream", p.stream},
              {"stride", p.stride}, {"max_word_length", p.max_word_length}};
}

WalkParams params_from_json(const json& j) {
  WalkParams p;
  p.alpha = j.at("alpha").get<double>();
  p.beta = j.at("beta").get<double>();
  p.steps = j.at("steps").get<std::uint64_t>();
  p.segments = j.at("segments").get<std::uint32_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.stream = j.value("stream", std::uint64_t{0});
  p.stride = j.at("stride").get<std::uint64_t>();
  p.max_word_length = j.at("max_word_length").get<std::uint64_t>();
  return p;
}

json record_sidecar(const WalkRecord& record, bool include_runtime) {
  const auto& s = record.proposal_stats;
  json j{{"params", params_to_json(record.params)},
         {"presentation", record.presentation},
         {"parity_even", record.parity_even},
         {"relator_acceptance", record.relator_acceptance},
         {"proposal_stats",
          {{"conjugations_proposed", s.conjugations_proposed},
           {"conjugations_accepted", s.conjugations_accepted},
           {"insertions_proposed", s.insertions_proposed},
           {"insertions_unreduced", s.insertions_unreduced},
           {"insertions_accepted", s.insertions_accepted}}},
         {"status", record.status == WalkStatus::completed ? "completed" : "diverged"},
         {"steps_done", record.steps_done},
         {"max_length_seen", record.max_length_seen},
         {"final_word_length", record.final_word.size()}};
  if (include_runtime) j["runtime_seconds"] = record.runtime_seconds;
  return j;
}

void save_record(const WalkRecord& record, const std::filesystem::path& base) {
  auto csv_path = base;
  csv_path += ".csv";
  auto json_path = base;
  json_path += ".json";
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());
  write_record_csv(record, csv);
  std::ofstream js(json_path);
  if (!js) throw std::runtime_error("cannot write " + json_path.string());
  js << record_sidecar(record).dump(2) << '\n';
}

WalkRecord load_record(const std::filesystem::path& csv_path) {
  auto json_path = csv_path;
  json_path.replace_extension(".json");
  std::ifstream js(json_path);
  if (!js) throw std::runtime_error("missing sidecar " + json_path.string());
  const json side = json::parse(js);

  WalkRecord rec;
  rec.params = params_from_json(side.at("params"));
  rec.presentation = side.at("presentation").get<std::string>();
  rec.parity_even = side.at("parity_even").get<bool>();
  rec.relator_acceptance = side.at("relator_acceptance").get<std::vector<std::uint64_t>>();
  const auto& s = side.at("proposal_stats");
  rec.proposal_stats.conjugations_proposed = s.at("conjugations_proposed");
  rec.proposal_stats.conjugations_accepted = s.at("conjugations_accepted");
  rec.proposal_stats.insertions_proposed = s.at("insertions_proposed");
  rec.proposal_stats.insertions_unreduced = s.at("insertions_unreduced");
  rec.proposal_stats.insertions_accepted = s.at("insertions_accepted");
  rec.status = side.at("status") == "completed" ? WalkStatus::completed : WalkStatus::diverged;
  rec.steps_done = side.at("steps_done");
  rec.max_length_seen = side.at("max_length_seen");
  rec.runtime_seconds = side.value("runtime_seconds", 0.0);

  const CsvTable table = read_csv(csv_path);
  const std::size_t segments = table.header.size() - 2;
  if (table.header.size() < 4 || table.header[0] != "n" || table.header[1] != "W_n") {
    throw std::runtime_error(csv_path.string() + ": not a walk histogram CSV");
  }
  if (segments != rec.params.segments) {
    throw std::runtime_error(csv_path.string() + ": segment count disagrees with sidecar");
  }
  rec.segment_histograms.assign(segments, std::vector<std::uint64_t>(table.rows.size(), 0));
  rec.histogram.assign(table.rows.size(), 0);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (std::stoull(row[0]) != r) throw std::runtime_error(csv_path.string() + ": rows must be n = 0, 1, ...");
    rec.histogram[r] = std::stoull(row[1]);
    for (std::size_t i = 0; i < segments; ++i) rec.segment_histograms[i][r] = std::stoull(row[2 + i]);
  }
  return rec;
}

}  // namespace cogrowth
