#pragma once

#include <boxfdc/decomposition.hpp>
#include <boxfdc/errors.hpp>
#include <boxfdc/game.hpp>

#include <json.hpp>

#include <string>

namespace boxfdc::cli {

using Json = nlohmann::json;

inline constexpr const char* kSequenceSchema = "boxfdc.decomposition-sequence/1";
inline constexpr const char* kTranscriptSchema = "boxfdc.transcript/1";

// Artifact file does not follow its schema or names points outside the window.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Subsets are written as lists of group elements, each an integer array.
Json subset_to_json(const PointSubset& s, const GroupWindow& window);
PointSubset subset_from_json(const Json& j, const GroupWindow& window);

Json decomposition_to_json(const Decomposition& d, const GroupWindow& window);
Decomposition decomposition_from_json(const Json& j, const GroupWindow& window);

// kind is "ordinary" or "full"; bounds are stored per stage.
Json sequence_to_json(const DecompositionSequence& seq, const std::string& kind, const GroupWindow& window);
DecompositionSequence sequence_from_json(const Json& j, const GroupWindow& window, std::string* kind);

Json transcript_to_json(const GameTranscript& t, const GroupWindow& window);
GameTranscript transcript_from_json(const Json& j, const GroupWindow& window);

// The artifact inside a report (result.artifact) or the file itself.
const Json& artifact_of(const Json& file);

}  // namespace boxfdc::cli
