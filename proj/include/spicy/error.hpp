#pragma once

#include <stdexcept>
#include <string>

namespace spicy {

/// Diagnostic codes surfaced by the CLI. Input-side problems map to exit 2,
/// failed checks to exit 1.
enum class Diag {
    schema,            // malformed file / inconsistent flags
    out_of_window,     // a result escaped the (degree, value) window
    dimension_mismatch,
    zero_vector,
    not_homogeneous,
    not_primitive,
    not_independent,
    mixed_degree,
    insufficient_vectors,
    value_bound,       // |v_i| <= c*i violated
    shape_violation,   // coproduct not of the connected-bialgebra shape
    precondition,      // anything else the caller got wrong
};

inline const char* diag_name(Diag d) {
    switch (d) {
        case Diag::schema: return "schema";
        case Diag::out_of_window: return "out-of-window";
        case Diag::dimension_mismatch: return "dimension-mismatch";
        case Diag::zero_vector: return "zero-vector";
        case Diag::not_homogeneous: return "not-homogeneous";
        case Diag::not_primitive: return "not-primitive";
        case Diag::not_independent: return "not-independent";
        case Diag::mixed_degree: return "mixed-degree";
        case Diag::insufficient_vectors: return "insufficient-vectors";
        case Diag::value_bound: return "value-bound";
        case Diag::shape_violation: return "shape-violation";
        case Diag::precondition: return "precondition";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(Diag d, const std::string& msg)
        : std::runtime_error(std::string(diag_name(d)) + ": " + msg), diag_(d) {}

    Diag diag() const { return diag_; }

  private:
    Diag diag_;
};

struct OutOfWindow : Error {
    explicit OutOfWindow(const std::string& msg) : Error(Diag::out_of_window, msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error(Diag::schema, msg) {}
};

}  // namespace spicy
