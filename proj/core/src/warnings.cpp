#include "swpclock/warnings.hpp"

#include <iostream>
#include <utility>

namespace swpclock {

namespace {

thread_local WarningHandler g_handler;

void default_handler(const std::string& message) {
    std::cerr << "[swpclock warning] " << message << '\n';
}

} // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    WarningHandler previous = std::move(g_handler);
    g_handler = std::move(handler);
    return previous;
}

void emit_warning(const std::string& message) {
    if (g_handler)
        g_handler(message);
    else
        default_handler(message);
}

WarningCollector::WarningCollector() {
    previous_ = set_warning_handler([this](const std::string& m) { messages_.push_back(m); });
}

WarningCollector::~WarningCollector() {
    set_warning_handler(std::move(previous_));
}

} // namespace swpclock
