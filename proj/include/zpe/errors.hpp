#ifndef ZPE_ERRORS_HPP
#define ZPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zpe {

// Rejected input or violated operation precondition (CLI maps this to exit 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration budget exceeded (CLI maps this to exit 3).
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zpe

#endif
