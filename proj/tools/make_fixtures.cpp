// Regenerates the demo datasets under fixtures/ from pinned seeds.
//
//   make_fixtures <fixtures-dir>
//
// twitter.csv          id,follower,following   50000 profiles
// facebook_fans.csv    id,fans                 25000 pages
// tencent_followers.jsonl  {"id","follower"}   6095 accounts
//
// Counts come from uniform mixtures with ranges matching public snapshots of
// these networks; a small share of records is zeroed to mimic inactive
// profiles.

#include <benfordnet/benfordnet.hpp>

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace benfordnet;

std::vector<std::uint64_t> counts(std::uint64_t n, std::uint64_t s_max, std::uint64_t seed,
                                  double zero_share) {
  GeneratorSpec spec;
  spec.count = n;
  spec.s_max = s_max;
  spec.seed = seed;
  auto values = gen_uniform_mixture(spec);
  Rng rng(derive_seed(seed, 0));
  for (const auto i : sample_indices(values.size(), planted_count(values.size(), zero_share), rng)) {
    values[i] = 0;
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixtures-dir>\n";
    return 1;
  }
  const std::string dir = argv[1];

  {
    const auto follower = counts(50000, 54353496, 20140709, 0.02);
    const auto following = counts(50000, 2428730, 486250, 0.03);
    std::ofstream out(dir + "/twitter.csv", std::ios::binary);
    out << "id,follower,following\n";
    for (std::size_t i = 0; i < follower.size(); ++i) {
      out << "tw" << i + 1 << ',' << follower[i] << ',' << following[i] << '\n';
    }
  }
  {
    const auto fans = counts(25000, 100000000, 3532700, 0.0137);
    std::ofstream out(dir + "/facebook_fans.csv", std::ios::binary);
    out << "id,fans\n";
    for (std::size_t i = 0; i < fans.size(); ++i) out << "fb" << i + 1 << ',' << fans[i] << '\n';
  }
  {
    const auto follower = counts(6095, 1000000, 6095, 0.0);
    std::ofstream out(dir + "/tencent_followers.jsonl", std::ios::binary);
    for (std::size_t i = 0; i < follower.size(); ++i) {
      out << nlohmann::json{{"id", "qq" + std::to_string(i + 1)}, {"follower", follower[i]}}.dump()
          << '\n';
    }
  }
  return 0;
}
