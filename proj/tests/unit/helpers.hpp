#pragma once

#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "patlas/records.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return PATLAS_TEST_DATA_DIR; }

struct Where {
  const char* city;
  const char* country;
  const char* admin1 = nullptr;
};

inline patlas::PatentRecord rec(std::string id, patlas::Date date, std::initializer_list<Where> inventors,
                                std::vector<patlas::Assignee> assignees = {}, long cited = 0) {
  patlas::PatentRecord r;
  r.id = std::move(id);
  r.grant_date = date;
  for (const auto& w : inventors) {
    patlas::PartyAddress a;
    a.city = w.city;
    a.country = w.country;
    if (w.admin1) a.admin1 = std::string(w.admin1);
    r.inventors.push_back(std::move(a));
  }
  r.assignees = std::move(assignees);
  r.cited_by_count = cited;
  return r;
}

inline patlas::Assignee firm(std::string name, std::optional<std::string> country) {
  return {std::move(name), std::move(country), patlas::OrgType::Unknown};
}

// Scratch directory removed at scope exit.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("patlas_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
