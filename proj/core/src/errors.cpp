#include "musb/errors.hpp"

namespace musb {

ToleranceNotMet::ToleranceNotMet(const std::string& what, double achieved_error)
    : std::runtime_error(what), achieved_error_(achieved_error) {}

}  // namespace musb
