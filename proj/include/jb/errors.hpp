// Error types thrown across the library. Every failure mode that callers are
// expected to distinguish gets its own type; everything else is jb::error.
#ifndef JB_ERRORS_HPP
#define JB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jb {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands built over different symbol universes were combined.
struct universe_mismatch : error {
    using error::error;
};

// Parameter derivative rules recurse without terminating.
struct rule_cycle : error {
    using error::error;
};

// Matrix or argument-count shape violation (non-square Ndet, wrong bracket arity).
struct shape_error : error {
    using error::error;
};

// Filtration degree below the actual order of an operator.
struct filtration_error : error {
    using error::error;
};

// Order of the zero polynomial requested.
struct undefined_order : error {
    using error::error;
};

// Groebner or reduction work exceeded the configured degree or size budget.
struct budget_exceeded : error {
    using error::error;
};

// Evaluation point failed a genericity requirement (symbol row vanished,
// invertible hit zero after all retries).
struct degenerate_point : error {
    using error::error;
};

// No syzygy operator exists within the configured order and degree bounds.
struct syzygy_not_found : error {
    using error::error;
};

// Dimension or cohomology data did not stabilize below the configured cap.
struct cap_error : error {
    using error::error;
};

// System file rejected; line is 1-based, 0 when unknown.
struct parse_error : error {
    int line;
    parse_error(const std::string& what, int line_) : error(what), line(line_) {}
};

} // namespace jb

#endif
