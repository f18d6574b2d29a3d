#pragma once

#include <stdexcept>
#include <string>

namespace crowdbelief {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// evidential core
struct EmptyFocal : Error { using Error::Error; };
struct FullFrameFocal : Error { using Error::Error; };
struct AlphaOutOfRange : Error { using Error::Error; };
struct FrameMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct TotalConflict : Error { using Error::Error; };
struct DogmaticMass : Error { using Error::Error; };
struct NonSeparable : Error { using Error::Error; };
struct AllConflict : Error { using Error::Error; };
struct EmptyCandidates : Error { using Error::Error; };
struct InvalidMass : Error { using Error::Error; };

// campaign model
struct LikertOutOfRange : Error { using Error::Error; };
struct InvalidSelection : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct DuplicateResponse : Error { using Error::Error; };
struct DanglingAttentionRef : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

// profiling
struct SelectionTooLarge : Error { using Error::Error; };
struct ImpMaxTooSmall : Error { using Error::Error; };
struct ArgOutOfRange : Error { using Error::Error; };
struct NoResponses : Error { using Error::Error; };
struct MismatchedQuestions : Error { using Error::Error; };
struct UnknownFrame : Error { using Error::Error; };
struct ZeroWeights : Error { using Error::Error; };

// aggregation and scoring
struct NoGoldQuestions : Error { using Error::Error; };
struct MissingGold : Error { using Error::Error; };

// baselines
struct IncompatibleFrames : Error { using Error::Error; };
struct DegenerateMatrix : Error { using Error::Error; };
struct LoneContributor : Error { using Error::Error; };
struct TooFewContributors : Error { using Error::Error; };

// experiments
struct NoGold : Error { using Error::Error; };
struct SizeExceedsCrowd : Error { using Error::Error; };

}  // namespace crowdbelief
