#pragma once

#include <stdexcept>
#include <string>

namespace mwt {

// Every failure mode the library raises intentionally.  Callers that need to
// distinguish cases switch on the code; the message carries the specifics.
enum class errc {
    malformed_number,
    too_many_fraction_digits,
    negative_radicand,
    scale_mismatch,
    no_feasible_triangulation,
    only_degenerate_optimal,
    too_large,
    ambiguous_optimum,
    malformed_file,
    invalid_embedding,
    too_short,
    not_grid_aligned,
    corridor_too_tight,
    missing_straight_portion,
    layout_conflict,
    ambiguous_weight,
    lemma_fails,
    internal_check,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what),
          code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
    throw error(code, what);
}

}  // namespace mwt
