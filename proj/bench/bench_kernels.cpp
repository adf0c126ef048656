// Parallel kernels against their serial references on a synthetic corpus.
// Run with OMP_NUM_THREADS to vary the team size.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "fixture_builder.hpp"
#include "patlas/citystats.hpp"
#include "patlas/concentration.hpp"
#include "patlas/control.hpp"
#include "patlas/gazetteer.hpp"
#include "patlas/records.hpp"

using namespace patlas;

namespace {

struct Data {
  Gazetteer gazetteer;
  std::vector<PatentRecord> corpus;
  std::string text;
  GeocodedCorpus geocoded;
  std::vector<char> mask;
  std::vector<long> counts;
  GroupProfile profile;

  explicit Data(std::size_t n)
      : gazetteer(fixtures::gazetteer_entries()), corpus(fixtures::synthetic_corpus(n, 11)) {
    text = serialize_corpus(corpus);
    geocoded = geocode_corpus(corpus, gazetteer);
    mask = top_cited_mask(corpus, 0.10);
    std::mt19937_64 g(5);
    counts.resize(n);
    for (auto& c : counts) c = 1 + static_cast<long>(g() % 40);
    const auto cities = aggregate_by_city(corpus, geocoded, mask);
    profile = build_group("DE", cities, gazetteer, GroupSelector::parse("DE"));
  }
};

const Data& data(std::size_t n) {
  static std::map<std::size_t, Data> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, n).first;
  return it->second;
}

void BM_parse(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(parse_record_stream(d.text));
}
void BM_parse_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::parse_record_stream(d.text));
}

void BM_geocode(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(geocode_corpus(d.corpus, d.gazetteer));
}
void BM_geocode_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::geocode_corpus(d.corpus, d.gazetteer));
}

void BM_aggregate(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(aggregate_by_city(d.corpus, d.geocoded, d.mask));
}
void BM_aggregate_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::aggregate_by_city(d.corpus, d.geocoded, d.mask));
}

void BM_quantiles(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(percentile_quantiles(d.counts));
}
void BM_quantiles_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::percentile_quantiles(d.counts));
}

void BM_year_counts(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(country_year_counts(d.corpus, "DE", CountingMode::Fractional));
}
void BM_year_counts_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::country_year_counts(d.corpus, "DE", CountingMode::Fractional));
}

void BM_control(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(control_summary(d.corpus, "DE", InventorUnit::Person));
}
void BM_control_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::control_summary(d.corpus, "DE", InventorUnit::Person));
}

void BM_intensity(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(patenting_intensity(d.profile));
}
void BM_intensity_serial(benchmark::State& s) {
  const auto& d = data(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(serial::patenting_intensity(d.profile));
}

#define PAIR(fn) \
  BENCHMARK(fn)->Arg(12000)->Arg(100000)->Unit(benchmark::kMillisecond); \
  BENCHMARK(fn##_serial)->Arg(12000)->Arg(100000)->Unit(benchmark::kMillisecond)

PAIR(BM_parse);
PAIR(BM_geocode);
PAIR(BM_aggregate);
PAIR(BM_quantiles);
PAIR(BM_year_counts);
PAIR(BM_control);
PAIR(BM_intensity);

}  // namespace

BENCHMARK_MAIN();
