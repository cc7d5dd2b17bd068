#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

// Small helpers shared by the test files. The generator here is
// intentionally separate from the library's one so tests do not depend on
// implementation internals.

namespace testutil {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  // uniform integer in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = std::string("/tmp/frbc_test_") + std::to_string(counter++) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".csv";
    std::ofstream out(path_);
    out << content;
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline std::string data_dir() {
  const char* env = std::getenv("FRBC_DATA_DIR");
  return env ? env : "data";
}

}  // namespace testutil
