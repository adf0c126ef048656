// Regenerates the checked-in test data under tests/data.
#include <filesystem>
#include <iostream>

#include "fixture_builder.hpp"
#include "patlas/csv.hpp"
#include "patlas/records.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path("tests/data");
  fs::create_directories(dir);
  const auto master = patlas::fixtures::reconstruction_corpus();
  const auto timeline = patlas::fixtures::timeline_corpus();
  patlas::csv::write_file_atomic(dir / "gazetteer.csv", patlas::fixtures::gazetteer_csv());
  patlas::csv::write_file_atomic(dir / "cee_de_2007.jsonl", patlas::serialize_corpus(master));
  patlas::csv::write_file_atomic(dir / "cee_timeline.jsonl", patlas::serialize_corpus(timeline));
  std::cout << master.size() << " reconstruction records, " << timeline.size() << " timeline records\n";
}
