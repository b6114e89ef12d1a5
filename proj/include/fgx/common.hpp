#pragma once

namespace fgx {

// Whether the set of activated edges is revealed to the learner after each
// step. Uninformed learners must infer activations from the observations.
enum class FeedbackMode { informed, uninformed };

inline const char* to_string(FeedbackMode m) {
    return m == FeedbackMode::informed ? "informed" : "uninformed";
}

}  // namespace fgx
