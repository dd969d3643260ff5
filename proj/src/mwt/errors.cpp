#include "mwt/errors.hpp"

namespace mwt {

const char* errc_name(errc code) {
    switch (code) {
        case errc::malformed_number: return "MalformedNumber";
        case errc::too_many_fraction_digits: return "TooManyFractionDigits";
        case errc::negative_radicand: return "NegativeRadicand";
        case errc::scale_mismatch: return "ScaleMismatch";
        case errc::no_feasible_triangulation: return "NoFeasibleTriangulation";
        case errc::only_degenerate_optimal: return "OnlyDegenerateOptimal";
        case errc::too_large: return "TooLarge";
        case errc::ambiguous_optimum: return "AmbiguousOptimum";
        case errc::malformed_file: return "MalformedFile";
        case errc::invalid_embedding: return "InvalidEmbedding";
        case errc::too_short: return "TooShort";
        case errc::not_grid_aligned: return "NotGridAligned";
        case errc::corridor_too_tight: return "CorridorTooTight";
        case errc::missing_straight_portion: return "MissingStraightPortion";
        case errc::layout_conflict: return "LayoutConflict";
        case errc::ambiguous_weight: return "AmbiguousWeight";
        case errc::lemma_fails: return "LemmaFails";
        case errc::internal_check: return "InternalCheck";
    }
    return "UnknownError";
}

}  // namespace mwt
