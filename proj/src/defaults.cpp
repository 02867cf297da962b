#include "lineage/defaults.hpp"

#include "lineage/util.hpp"

#include <stdexcept>

namespace lineage {

const ExtensionTable& builtin_extension_table() {
    static const ExtensionTable table = {
        {"asm", "Assembly"},
        {"bash", "Bourne Again Shell"},
        {"bat", "DOS Batch"},
        {"c", "C"},
        {"cc", "C++"},
        {"cmake", "CMake"},
        {"cpp", "C++"},
        {"cs", "C#"},
        {"css", "CSS"},
        {"cxx", "C++"},
        {"dart", "Dart"},
        {"go", "Go"},
        {"h", "C/C++ Header"},
        {"hh", "C/C++ Header"},
        {"hpp", "C/C++ Header"},
        {"hs", "Haskell"},
        {"htm", "HTML"},
        {"html", "HTML"},
        {"hxx", "C/C++ Header"},
        {"inc", "PHP/Pascal"},
        {"ini", "INI"},
        {"java", "Java"},
        {"js", "JavaScript"},
        {"json", "JSON"},
        {"jsx", "JSX"},
        {"kt", "Kotlin"},
        {"lua", "Lua"},
        {"m", "Objective-C"},
        {"markdown", "Markdown"},
        {"md", "Markdown"},
        {"ml", "OCaml"},
        {"mm", "Objective-C++"},
        {"php", "PHP"},
        {"pl", "Perl"},
        {"pm", "Perl"},
        {"proto", "Protocol Buffers"},
        {"py", "Python"},
        {"qml", "QML"},
        {"r", "R"},
        {"rb", "Ruby"},
        {"rs", "Rust"},
        {"s", "Assembly"},
        {"scala", "Scala"},
        {"sh", "Bourne Shell"},
        {"sol", "Solidity"},
        {"sql", "SQL"},
        {"swift", "Swift"},
        {"toml", "TOML"},
        {"ts", "TypeScript"},
        {"tsx", "TypeScript"},
        {"txt", "Text"},
        {"vue", "Vuejs Component"},
        {"xml", "XML"},
        {"yaml", "YAML"},
        {"yml", "YAML"},
    };
    return table;
}

const std::vector<std::string>& builtin_exclusion_lines() {
    // One entry per line of data/exclusion_terms.txt; "re:" marks a regex,
    // "except:<project_id>:<repo name>" marks a manual exception.
    static const std::vector<std::string> lines = {
        "binaries",
        "docs",
        "document",
        "papers",
        "whitepaper",
        "wiki",
        "re:^[a-z]{1,2}ips",
        "electrum",
        "explorer",
        "faucet",
        "vanitygen",
        "docker",
        "homebrew",
        "install",
        "example",
        "test",
        "kit",
        "lib",
        "plugin",
        "sdk",
        "service",
        "tools",
        "android",
        "gui",
        "ios",
        "macos",
        "mobile",
        "window",
        ".com",
        ".info",
        ".io",
        ".net",
        ".org",
        "-org",
        "site",
        "website",
        "www",
        "except:chips:chips",
        "except:vipstar-coin:VIPSTARCOIN",
    };
    return lines;
}

const std::vector<std::string>& builtin_name_stoplist() {
    static const std::vector<std::string> names = {
        "Crypto",
        "Coin",
        "Bit",
        "Token",
    };
    return names;
}

const std::vector<std::pair<std::string, std::string>>& builtin_alias_entries() {
    static const std::vector<std::pair<std::string, std::string>> entries = {
        {"PPCoin", "peercoin"},
        {"IOHK", "cardano"},
        {"go-ethereum", "ethereum"},
    };
    return entries;
}

const std::vector<std::pair<std::string, std::string>>& builtin_author_entries() {
    static const std::vector<std::pair<std::string, std::string>> entries = {
        {"Pieter Wuille", "bitcoin"},
        {"Satoshi Nakamoto", "bitcoin"},
    };
    return entries;
}

ExtensionTable load_extension_table(const std::string& path) {
    ExtensionTable table;
    const std::string text = read_file(path);
    int lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        std::string line = collapse_whitespace(raw);
        if (line.empty() || line[0] == '#')
            continue;
        const auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected '<ext> <language>'");
        table[to_lower(line.substr(0, sp))] = line.substr(sp + 1);
    }
    return table;
}

} // namespace lineage
