#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace logwalk {

/// Live-scalar accounting for strict-mode algorithm paths.
///
/// Every mutable scalar of an audited algorithm (loop counters,
/// accumulators, derived parameters, RNG state) is held in a Register bound
/// to a RegisterFile. The file tracks how many registers are live and the
/// high-water mark of that count. Graph data and input vectors are read
/// through the normal APIs and are not counted.
class RegisterFile {
 public:
  struct LogEntry {
    std::string name;
    std::size_t live_at_first_use;  // live count right after the first allocation
    std::uint64_t allocations;
  };

  void acquire(const char* name);
  void release() noexcept { --live_; }

  std::size_t live() const noexcept { return live_; }
  std::size_t high_water_mark() const noexcept { return high_water_; }
  /// One entry per register name, in order of first allocation.
  const std::vector<LogEntry>& log() const noexcept { return log_; }

 private:
  std::size_t live_ = 0;
  std::size_t high_water_ = 0;
  std::vector<const char*> keys_;
  std::vector<LogEntry> log_;
};

/// A scalar slot. With a null file it is a plain value.
template <typename T>
class Register {
 public:
  Register(RegisterFile* file, const char* name, T init = T{}) : file_(file), value_(init) {
    if (file_ != nullptr) file_->acquire(name);
  }
  ~Register() {
    if (file_ != nullptr) file_->release();
  }
  Register(const Register&) = delete;
  Register& operator=(const Register&) = delete;

  Register& operator=(T v) {
    value_ = v;
    return *this;
  }
  Register& operator+=(T v) {
    value_ += v;
    return *this;
  }
  Register& operator-=(T v) {
    value_ -= v;
    return *this;
  }
  Register& operator++() {
    ++value_;
    return *this;
  }

  T get() const noexcept { return value_; }
  operator T() const noexcept { return value_; }
  T& ref() noexcept { return value_; }

 private:
  RegisterFile* file_;
  T value_;
};

}  // namespace logwalk
