#pragma once

#include <cstddef>
#include <functional>

namespace lamlab {

constexpr std::size_t kDeepStackBytes = std::size_t{1} << 30;

// Runs fn on a thread with a large stack (or directly, if the calling thread
// already is one).  Exceptions propagate to the caller.
void run_on_deep_stack(const std::function<void()>& fn, std::size_t stack_bytes = kDeepStackBytes);

bool on_deep_stack();

} // namespace lamlab
