#pragma once

#include <stdexcept>
#include <string>

namespace fol {

// Thrown when a series consumer cannot certify its answer at the current
// truncation order. Drivers catch this and retry with a doubled order.
struct TruncationExhausted : std::runtime_error {
    explicit TruncationExhausted(const std::string& what)
        : std::runtime_error("truncation exhausted: " + what) {}
};

// Thrown when a configured resource budget (blow-ups, retries) runs out.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what)
        : std::runtime_error("budget exceeded: " + what) {}
};

// Malformed user input (parse errors, violated preconditions on data).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Retries fn(order), doubling the order on TruncationExhausted, up to cap.
template <typename F>
auto with_truncation_retry(int start, int cap, F&& fn) {
    int n = start;
    for (;;) {
        try {
            return fn(n);
        } catch (const TruncationExhausted&) {
            if (n >= cap) throw;
            n = std::min(cap, 2 * n);
        }
    }
}

}  // namespace fol
