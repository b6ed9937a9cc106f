#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace wdde {

namespace detail {
inline std::string ratio_text(double ratio) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", ratio);
    return buf;
}
} // namespace detail

// Bad input: schema violations, dimension mismatches, coverage gaps.
// `path` is a JSON-pointer-ish location when the error comes from a file.
class ProblemError : public std::runtime_error {
public:
    explicit ProblemError(const std::string& msg, std::string path = {})
        : std::runtime_error(path.empty() ? msg : msg + " at " + path), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// A fiber function was asked for a grid index outside its sampled range.
class MissingSample : public std::runtime_error {
public:
    MissingSample(double offset, long index)
        : std::runtime_error("missing sample at fiber offset " + std::to_string(offset) +
                             ", index " + std::to_string(index)),
          offset_(offset), index_(index) {}
    double offset() const { return offset_; }
    long index() const { return index_; }

private:
    double offset_;
    long index_;
};

// A matrix the solution procedure must invert failed the singular-value gate.
// `name` identifies which one (alpha, c1, cN, theta, Theta1, Theta, dense, ...).
class SingularSystem : public std::runtime_error {
public:
    SingularSystem(std::string name, double ratio)
        : std::runtime_error("singular system: " + name +
                             " (singular-value ratio " + detail::ratio_text(ratio) + ")"),
          name_(std::move(name)), ratio_(ratio) {}
    const std::string& name() const { return name_; }
    double ratio() const { return ratio_; }

private:
    std::string name_;
    double ratio_;
};

} // namespace wdde
