#ifndef VQST_CONFIG_HPP
#define VQST_CONFIG_HPP

// Line-oriented `key = value` configuration. `#` starts a comment,
// `include = other.cfg` splices another file (relative to the including one),
// later assignments override earlier ones. Angles are in units of pi.

#include <map>
#include <string>
#include <vector>

#include "vqst/model.hpp"
#include "vqst/optical_matrix.hpp"
#include "vqst/oracle.hpp"

namespace vqst {

struct ConfigBundle {
    SystemParams params;
    IntegratorConfig integrator;
    QdGeometry geometry;
    CavityMode dbr_mode = default_dbr_mode();
    CavityMode pc_mode = default_pc_mode();
    std::vector<std::string> warnings;
};

/// All recognised keys.
const std::vector<std::string>& config_keys();

class ConfigParser {
public:
    void parse_file(const std::string& path);
    void parse_text(const std::string& text, const std::string& origin, const std::string& base_dir = ".");
    /// Single assignment (as from a command-line override).
    void set(const std::string& key, const std::string& value, const std::string& origin = "--set");

    ConfigBundle build() const;

private:
    struct Entry {
        double value;
        std::string where; // origin:line
    };
    void parse_stream(const std::string& text, const std::string& origin, const std::string& base_dir, int depth);
    std::map<std::string, Entry> entries_;
};

ConfigBundle parse_config(const std::string& path);
ConfigBundle parse_config_text(const std::string& text);

} // namespace vqst

#endif
