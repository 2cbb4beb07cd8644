#pragma once

#include <functional>
#include <string>
#include <vector>

namespace swpclock {

/// Non-fatal numerical diagnostics (e.g. a finite-difference step whose
/// truncation estimate exceeds its target) are routed through a thread-local
/// handler instead of being thrown, so that batch computations can collect
/// them without unwinding.
using WarningHandler = std::function<void(const std::string&)>;

/// Install a handler for the current thread; returns the previous one.
/// Passing an empty function restores the default (write to stderr).
WarningHandler set_warning_handler(WarningHandler handler);

/// Emit a warning through the current thread's handler.
void emit_warning(const std::string& message);

/// RAII collector: captures warnings emitted on this thread during its
/// lifetime and restores the previous handler on destruction.
class WarningCollector {
  public:
    WarningCollector();
    ~WarningCollector();
    WarningCollector(const WarningCollector&) = delete;
    WarningCollector& operator=(const WarningCollector&) = delete;

    const std::vector<std::string>& messages() const { return messages_; }
    bool empty() const { return messages_.empty(); }

  private:
    std::vector<std::string> messages_;
    WarningHandler previous_;
};

} // namespace swpclock
