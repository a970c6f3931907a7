// Wall-clock comparison of the serial and OpenMP campaign runners, plus the
// eigensolver on its own.
//
//   campaign_bench [trials] [repeats]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "erasure_chi/campaign.hpp"

using namespace erasure_chi;

namespace {

template <class F>
double bestOf(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

bool sameReport(const CampaignReport& a, const CampaignReport& b) {
  for (std::size_t k = 0; k < a.suites.size(); ++k)
    if (a.suites[k].worst != b.suites[k].worst || a.suites[k].failures != b.suites[k].failures) return false;
  return a.suites.size() == b.suites.size();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t trials = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1000;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

  CampaignConfig config;
  config.trials = trials;
  config.dims = {2, 3, 4, 5, 6};

  CampaignReport serial, parallel;
  const double tSerial = bestOf(repeats, [&] { serial = runCampaignSerial(config); });
  const double tParallel = bestOf(repeats, [&] { parallel = runCampaignParallel(config); });

  std::cout << std::fixed << std::setprecision(4);
  std::cout << "campaign  trials=" << trials << " dims=2..6 threads=" << omp_get_max_threads() << "\n";
  std::cout << "  serial    " << tSerial << " s\n";
  std::cout << "  openmp    " << tParallel << " s  (speedup " << tSerial / tParallel << ")\n";
  std::cout << "  reports " << (sameReport(serial, parallel) ? "identical" : "DIFFER") << "\n";

  std::cout << "eigh (best of " << repeats << ", 200 matrices each)\n";
  for (Eigen::Index dim : {2, 4, 8, 16, 32}) {
    std::vector<HermitianOperator> ops;
    for (std::uint64_t k = 0; k < 200; ++k) ops.push_back(randomDensityMatrix(dim, dim, RngStream(k)).op());
    const double t = bestOf(repeats, [&] {
      for (const auto& a : ops) (void)eigh(a);
    });
    std::cout << "  dim " << std::setw(2) << dim << "  " << t / 200 * 1e6 << " us/matrix\n";
  }
  return sameReport(serial, parallel) ? 0 : 1;
}
