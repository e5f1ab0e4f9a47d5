#ifndef CONCUR_COMMON_HPP
#define CONCUR_COMMON_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace concur {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: unknown identifiers, duplicate declarations, bad files.
class InputError : public Error {
  public:
    using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/**
 * Opaque identifier ordered by its string encoding.
 *
 * The tag only keeps states, events, labels and places from being mixed up;
 * all of them compare and print as plain strings.
 */
template <typename Tag>
class Name {
  public:
    Name() = default;
    explicit Name(std::string value) : value_(std::move(value)) {}

    const std::string& str() const noexcept { return value_; }

    friend auto operator<=>(const Name&, const Name&) = default;
    friend bool operator==(const Name&, const Name&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Name& n) { return os << n.value_; }

  private:
    std::string value_;
};

using StateId = Name<struct StateTag>;
using EventId = Name<struct EventTag>;
using Label = Name<struct LabelTag>;
using PlaceId = Name<struct PlaceTag>;

/// Problem found by one of the report-based validators.
struct Violation {
    std::string kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    void add(std::string kind, std::string message)
    {
        violations.push_back({std::move(kind), std::move(message)});
    }
    bool has(const std::string& kind) const
    {
        for (const auto& v : violations)
            if (v.kind == kind)
                return true;
        return false;
    }
};

std::ostream& operator<<(std::ostream& os, const ValidationReport& report);

/// Join strings with a separator.
std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace concur

template <typename Tag>
struct std::hash<concur::Name<Tag>> {
    std::size_t operator()(const concur::Name<Tag>& n) const noexcept
    {
        return std::hash<std::string>{}(n.str());
    }
};

#endif  // CONCUR_COMMON_HPP
