#pragma once

// Corpus-level analysis with a content-addressed result cache and a fixed
// worker count. Output order is the stable name order of the corpus.

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "classnum/analysis.hpp"
#include "classnum/corpus.hpp"
#include "classnum/report.hpp"

namespace classnum {

inline constexpr const char* kCacheEnv = "CLASSNUM_CACHE_DIR";

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream s;
  for (unsigned i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return s.str();
}

/// Explicit directory, else $CLASSNUM_CACHE_DIR, else none.
inline std::filesystem::path resolve_cache_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv(kCacheEnv); env && *env) return env;
  return {};
}

inline std::string cache_key(const CurveSpec& c, const AnalysisOptions& opt) {
  std::ostringstream s;
  s << kCodeVersion << '|' << canonical(c) << "|ceiling=" << opt.count.ceiling << "|prec=" << opt.precision << "|r=";
  for (auto r : opt.r_choices) s << r << ',';
  return sha256_hex(s.str());
}

struct RunStats {
  std::size_t cache_hits = 0;
  std::size_t computed = 0;
};

inline std::vector<Json> analyze_corpus(std::vector<CurveSpec> curves, const AnalysisOptions& opt,
                                        const std::filesystem::path& cache_dir = {}, unsigned jobs = 1,
                                        RunStats* stats = nullptr) {
  std::stable_sort(curves.begin(), curves.end(),
                   [](const CurveSpec& a, const CurveSpec& b) { return a.name < b.name; });
  std::vector<Json> out(curves.size());
  std::vector<char> hit(curves.size(), 0);
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);
  auto work = [&](std::size_t i) {
    std::filesystem::path file;
    if (!cache_dir.empty()) {
      file = cache_dir / (cache_key(curves[i], opt) + ".json");
      std::ifstream in(file);
      if (in) {
        try {
          out[i] = Json::parse(in);
          hit[i] = 1;
          return;
        } catch (const nlohmann::json::exception&) {
          // unreadable entry: recompute and overwrite
        }
      }
    }
    out[i] = to_json(analyze_curve(curves[i], opt));
    if (!file.empty()) {
      const auto tmp = file.string() + ".tmp" + std::to_string(i);
      {
        std::ofstream o(tmp);
        o << out[i].dump();
      }
      std::filesystem::rename(tmp, file);
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, curves.size()))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < curves.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < curves.size();) work(i);
      });
    for (auto& th : pool) th.join();
  }
  if (stats) {
    stats->cache_hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    stats->computed = curves.size() - stats->cache_hits;
  }
  return out;
}

}  // namespace classnum
