#pragma once

#include <spdlog/spdlog.h>

#include <string>
#include <vector>

namespace operlab {

/// Warnings go through spdlog; tests may additionally capture them.
struct WarningSink {
  static std::vector<std::string>& captured() {
    static thread_local std::vector<std::string> w;
    return w;
  }
};

inline void warn(const std::string& msg) {
  spdlog::warn("{}", msg);
  WarningSink::captured().push_back(msg);
}

}  // namespace operlab
