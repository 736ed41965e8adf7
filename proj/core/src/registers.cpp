#include "logwalk/registers.hpp"

#include <algorithm>

namespace logwalk {

void RegisterFile::acquire(const char* name) {
  ++live_;
  high_water_ = std::max(high_water_, live_);
  // Names are string literals, so pointer identity is a cheap key.
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (keys_[i] == name) {
      ++log_[i].allocations;
      return;
    }
  }
  keys_.push_back(name);
  log_.push_back({name, live_, 1});
}

}  // namespace logwalk
