// Timing harness for the exhaustive mixing-audit kernel: parallel
// Gray-code implementation vs the serial reference, across small regular
// graphs (the only regime where the exhaustive audit runs).
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>

#include "onefact/generators.hpp"
#include "onefact/spectral.hpp"

namespace {

double time_seconds(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

int main() {
  using namespace onefact;
  std::cout << "n d lambda parallel_s serial_s speedup agree\n";
  for (auto [n, d] : {std::pair{12, 4}, {14, 5}, {16, 5}, {16, 7}}) {
    GenSpec spec;
    spec.model = GenModel::kRandomRegular;
    spec.n = n;
    spec.d = d;
    spec.seed = 42;
    Graph g = generate(spec);
    double lambda = second_eigenvalue(g).lambda;
    MixingAudit fast, slow;
    double tp = time_seconds([&] { fast = mixing_audit(g, lambda, 0, 1); });
    double ts = time_seconds([&] { slow = mixing_audit_reference(g, lambda); });
    bool agree = fast.pass == slow.pass;
    std::cout << n << " " << d << " " << lambda << " " << tp << " " << ts
              << " " << (tp > 0 ? ts / tp : 0) << " "
              << (agree ? "yes" : "NO") << "\n";
    if (!agree) return 1;
  }
  return 0;
}
