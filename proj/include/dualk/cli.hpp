#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dualk/error.hpp"
#include "dualk/k_report.hpp"
#include "dualk/kh_report.hpp"
#include "dualk/snc_divisor.hpp"

namespace dualk::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct InputDocument {
    int version = kFormatVersion;
    SncDivisor divisor;
    std::optional<PicardInput> picard;
    std::vector<DuBoisTable> dubois;
    FieldMode field_mode = FieldMode::algebraically_closed;
};

/// Malformed document; path is the JSON field path, e.g. "divisor.strata[2].subset".
class SchemaError : public ValidationError {
public:
    SchemaError(std::string path, const std::string& detail);
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class VersionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Parses and fully validates a document. Divisor axiom failures come back
/// as SncError with the offending field path prepended to the message.
InputDocument parse_document(const std::string& text);
InputDocument parse_input(const std::string& path);

Json divisor_to_json(const SncDivisor& d);
Json document_to_json(const InputDocument& doc);

const std::vector<std::string>& commands();

struct RunOptions {
    std::size_t max_blowups = 10000;
};

/// Human text and the structured document mirroring it.
struct CommandResult {
    std::string text;
    Json json;
};

/// Throws MissingBlockError when the command needs an absent block and
/// InvariantError when two independent computations disagree.
CommandResult run(const std::string& command, const InputDocument& doc, const RunOptions& options = {});

enum class Emit { text, json, both };

std::optional<Emit> parse_emit(const std::string& text);
std::string render(const CommandResult& result, Emit emit);

/// 0 ok, 1 validation, 2 missing block, 3 invariant breach or anything unexpected.
int exit_code_for(const std::exception& e);

} // namespace dualk::cli
