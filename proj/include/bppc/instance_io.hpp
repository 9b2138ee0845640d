#ifndef BPPC_INSTANCE_IO_HPP
#define BPPC_INSTANCE_IO_HPP

#include "bppc/core.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace bppc {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

// Native format, line oriented, all integers space separated:
//   BPPC 1
//   n m B has_model
//   id weight [l r]      (n lines; endpoints iff has_model = 1)
//   u v                  (m lines, u < v)

void write_instance(const Instance& instance, std::ostream& out);
void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);

// Conflict-library format (1-based):
//   n B
//   i w_i j1 j2 ...      (n lines; listed partners conflict with i)
// Conflicts may be listed in one or both directions.

Instance read_literature_instance(std::istream& in);
Instance read_literature_instance(const std::filesystem::path& path);

}  // namespace bppc

#endif  // BPPC_INSTANCE_IO_HPP
