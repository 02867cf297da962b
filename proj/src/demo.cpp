#include "lineage/demo.hpp"

#include "lineage/util.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace lineage {

namespace {

std::string fake_commit(int n) {
    char buf[41];
    std::snprintf(buf, sizeof(buf), "%040x", n);
    return buf;
}

// --- fixed file contents ------------------------------------------------

const char* kMainV1 = "// consensus and validation\n"
                      "#include \"util.h\"\n"
                      "int ProcessBlock(int height) { return height + 1; }\n";
const char* kMainV2 = "// consensus and validation\n"
                      "#include \"util.h\"\n"
                      "#include \"addrman.h\"\n"
                      "int ProcessBlock(int height) { return height + 2; }\n";
const char* kMainV3 = "// consensus and validation\n"
                      "#include \"util.h\"\n"
                      "#include \"addrman.h\"\n"
                      "int ProcessBlock(int height) { return CheckWork(height); }\n";
const char* kMainLite = "// consensus and validation (scrypt proof of work)\n"
                        "#include \"util.h\"\n"
                        "#include \"scrypt.h\"\n"
                        "int ProcessBlock(int height) { return ScryptWork(height); }\n";
const char* kUtilV1 = "#pragma once\nint CheckWork(int h);\n";
const char* kUtilV2 = "#pragma once\nint CheckWork(int h);\nint FormatMoney(long n);\n";
const char* kNet = "// peer-to-peer networking\nvoid ConnectNode(const char* addr);\n";
const char* kAddrman = "// address manager\nstruct AddrInfo { int attempts; };\n";
const char* kWallet = "// key storage\nstruct Wallet { int keys; };\n";
const char* kRpc = "// json-rpc server\nvoid StartRpc(int port);\n";
const char* kMiner = "// block assembly\nvoid MineBlock();\n";
const char* kScrypt = "/* scrypt proof of work, unique to this chain */\n"
                      "int ScryptWork(int h) { return h * 2; }\n";
const char* kKernel = "// proof of stake kernel\nint CheckStake(int h) { return h; }\n";

const char* kGethBackend = "package eth\n\nfunc StartBackend() int { return 1 }\n";
const char* kGethVm = "package core\n\nfunc RunVm(code []byte) int { return len(code) }\n";
const char* kGoldVm = "package core\n\nfunc RunGoldVm(code []byte) int { return 0 }\n";

const char* kSharedLicense =
    "GNU LESSER GENERAL PUBLIC LICENSE\n"
    "Version 3, 29 June 2007\n"
    "\n"
    "Everyone is permitted to copy and distribute verbatim copies of this\n"
    "license document, but changing it is not allowed.\n"
    "\n"
    "This version of the GNU Lesser General Public License incorporates the\n"
    "terms and conditions of version 3 of the GNU General Public License.\n";

const char* kBitcoinCopying =
    "Copyright (c) 2009-2014 The Bitcoin Core developers\n"
    "Copyright (c) 2009 Satoshi Nakamoto\n"
    "\n"
    "Permission is hereby granted, free of charge, to any person obtaining a copy\n"
    "of this software and associated documentation files.\n";

const char* kLitecoinCopying =
    "Copyright (c) 2009-2013 The Bitcoin Core developers\n"
    "Copyright (c) 2011-2013 The Litecoin developers\n"
    "\n"
    "Permission is hereby granted, free of charge, to any person obtaining a copy\n"
    "of this software and associated documentation files.\n";

const char* kPlanetCopying =
    "Copyright (c) 2009-2014 The Bitcoin Core developers\n"
    "Copyright (c) 2014 The Bitcoin Planet developers\n";

const char* kGethCopying = "Copyright 2014 The go-ethereum Authors\n"
                           "This file is part of the go-ethereum library.\n";

const char* kCardanoCopying = "Copyright (c) 2017 IOHK\n";

const char* kPeercoinHeader =
    "// Copyright (c) 2009 Satoshi Nakamoto\n"
    "// Copyright (c) 2012 PPCoin developers\n"
    "// Distributed under the MIT software license.\n";

const char* kEthGoldHeader = "// Copyright 2014 The go-ethereum Authors\n"
                             "// Copyright 2018 Ethereum Gold\n";

const char* kOmiseContract = R"SOL(pragma solidity ^0.4.18;

library SafeMath {
  function mul(uint256 a, uint256 b) internal pure returns (uint256) {
    if (a == 0) { return 0; }
    uint256 c = a * b;
    assert(c / a == b);
    return c;
  }
  function add(uint256 a, uint256 b) internal pure returns (uint256) {
    uint256 c = a + b;
    assert(c >= a);
    return c;
  }
}

contract Ownable {
  address public owner;
  function Ownable() public { owner = msg.sender; }
}

contract BasicToken {
  using SafeMath for uint256;
  mapping(address => uint256) balances;
  uint256 totalSupply_;
}

contract StandardToken is BasicToken {
  mapping(address => mapping(address => uint256)) internal allowed;
}

contract OmiseGo is StandardToken, Ownable {
  string public name = "OmiseGO";
  string public symbol = "OMG";
  uint8 public decimals = 18;
}
)SOL";

const char* kGoldDeployedContract = R"SOL(pragma solidity ^0.4.18;

library SafeMath {
  function add(uint256 a, uint256 b) internal pure returns (uint256) {
    uint256 c = a + b;
    assert(c >= a);
    return c;
  }
}

contract StandardToken {
  using SafeMath for uint256;
  mapping(address => uint256) balances;
}

contract GoldTokenDeployed is StandardToken {
  string public name = "GoldToken";
}
)SOL";

const char* kGoldRepoContract = R"SOL(pragma solidity >=0.4.21 <0.6.0;
import "zeppelin-solidity/contracts/math/SafeMath.sol";

contract Ownable {
  address public owner;
}

contract Mintable is Ownable {
  bool public mintingFinished;
}

contract UpgradeableToken {
  address public upgradeMaster;
}

contract GoldToken is Mintable, UpgradeableToken {
  using SafeMath for uint256;
  string public name = "GoldToken";
}
)SOL";

// --- corpus assembly -----------------------------------------------------

struct DemoRepo {
    std::string repo_id;
    std::string name;
    long fork_count;
    std::string last_update;
    std::vector<std::pair<int, std::string>> commits; // (hash counter, iso time)
    std::vector<std::pair<std::string, std::string>> files; // rel path -> contents
};

struct DemoProject {
    std::string id;
    std::string name;
    std::string symbol;
    std::string kind;
    std::string category;
    std::vector<DemoRepo> repos;
    std::vector<std::pair<std::string, std::string>> contracts; // path, origin
};

void write_tree(const fs::path& root,
                const std::vector<std::pair<std::string, std::string>>& files) {
    for (const auto& [rel, contents] : files)
        write_file(root / rel, contents);
}

} // namespace

void write_demo_corpus(const fs::path& dir) {
    // bitcoin history doubles as the baseline reference history
    const std::vector<std::pair<int, std::string>> bitcoin_commits = {
        {1, "2009-08-01T00:00:00Z"}, {2, "2009-11-01T00:00:00Z"}, {3, "2010-03-01T00:00:00Z"},
        {4, "2010-08-01T00:00:00Z"}, {5, "2011-01-01T00:00:00Z"}, {6, "2011-06-01T00:00:00Z"},
        {7, "2011-11-01T00:00:00Z"}, {8, "2012-03-01T00:00:00Z"}, {9, "2012-06-01T00:00:00Z"},
        {10, "2012-08-15T00:00:00Z"},
    };

    const std::vector<std::pair<std::string, std::string>> shared_license_only = {
        {"LICENSE.md", kSharedLicense}};

    std::vector<DemoProject> projects;

    {
        DemoProject p{"bitcoin", "Bitcoin", "BTC", "coin", "", {}, {}};
        DemoRepo core{"bitcoin-core",
                      "bitcoin",
                      500,
                      "2018-07-01T00:00:00Z",
                      bitcoin_commits,
                      {{"src/main.cpp", kMainV3},
                       {"src/util.h", kUtilV2},
                       {"src/net.cpp", kNet},
                       {"src/addrman.cpp", kAddrman},
                       {"src/wallet.cpp", kWallet},
                       {"COPYING", kBitcoinCopying}}};
        DemoRepo website{"bitcoin-website",
                         "bitcoin-website",
                         3,
                         "2018-06-01T00:00:00Z",
                         {{101, "2015-01-01T00:00:00Z"}},
                         {{"index.html", "<html>bitcoin</html>\n"}}};
        p.repos = {core, website};
        projects.push_back(p);
    }
    {
        DemoProject p{"litecoin", "Litecoin", "LTC", "coin", "Metals", {}, {}};
        DemoRepo r{"litecoin-core",
                   "litecoin",
                   120,
                   "2018-05-01T00:00:00Z",
                   // partial export: history since the fork point, so the
                   // shared commits witness the fork while created_at stays
                   // younger than the origin's
                   {{3, "2010-03-01T00:00:00Z"},
                    {4, "2010-08-01T00:00:00Z"},
                    {21, "2011-10-13T00:00:00Z"},
                    {22, "2011-12-01T00:00:00Z"}},
                   {{"src/main.cpp", kMainLite},
                    {"src/util.h", kUtilV2},
                    {"src/net.cpp", kNet},
                    {"src/addrman.cpp", kAddrman},
                    {"src/scrypt.c", kScrypt},
                    {"COPYING", kLitecoinCopying}}};
        p.repos = {r};
        projects.push_back(p);
    }
    {
        DemoProject p{"bitcoin-planet", "Bitcoin Planet", "BTPL", "coin", "Outer space", {}, {}};
        DemoRepo r{"bitcoinplanet",
                   "bitcoinplanet",
                   2,
                   "2016-03-01T00:00:00Z",
                   {{4, "2010-08-01T00:00:00Z"},
                    {5, "2011-01-01T00:00:00Z"},
                    {31, "2014-02-01T00:00:00Z"}},
                   {{"src/main.cpp", kMainV3},
                    {"src/util.h", kUtilV2},
                    {"src/net.cpp", kNet},
                    {"src/addrman.cpp", kAddrman},
                    {"src/wallet.cpp", kWallet},
                    {"COPYING", kPlanetCopying}}};
        p.repos = {r};
        projects.push_back(p);
    }
    {
        DemoProject p{"ethereum", "Ethereum", "ETH", "coin", "Computing", {}, {}};
        DemoRepo geth{"go-ethereum",
                      "go-ethereum",
                      200,
                      "2018-07-10T00:00:00Z",
                      {{41, "2014-03-01T00:00:00Z"}, {42, "2015-08-01T00:00:00Z"}},
                      {{"eth/backend.go", kGethBackend},
                       {"core/vm.go", kGethVm},
                       {"COPYING", kGethCopying}}};
        DemoRepo tests{"ethereum-tests",
                       "ethereum-tests",
                       40,
                       "2018-07-01T00:00:00Z",
                       {{43, "2015-01-01T00:00:00Z"}},
                       {{"vm/basic.json", "{}\n"}}};
        DemoRepo sandbox{"evm-sandbox",
                         "evm-sandbox",
                         1,
                         "2016-01-01T00:00:00Z",
                         {{44, "2015-06-01T00:00:00Z"}},
                         {{"sandbox/run.go", "package sandbox\n"}}};
        p.repos = {geth, tests, sandbox};
        projects.push_back(p);
    }
    {
        DemoProject p{"ethereum-gold", "Ethereum Gold", "ETG", "coin", "Metals", {}, {}};
        // no COPYING file: the attribution lives in a source header
        DemoRepo r{"ethereumgold",
                   "ethereumgold",
                   4,
                   "2018-02-01T00:00:00Z",
                   {{51, "2018-01-10T00:00:00Z"}},
                   {{"eth/backend.go", kGethBackend}, // unmodified upstream file
                    {"core/vm.go", kGoldVm},
                    {"gold/fork.go", std::string(kEthGoldHeader) + "package gold\n"}}};
        p.repos = {r};
        projects.push_back(p);
    }
    {
        DemoProject p{"peercoin", "Peercoin", "PPC", "coin", "", {}, {}};
        DemoRepo r{"peercoin",
                   "peercoin",
                   30,
                   "2017-11-01T00:00:00Z",
                   {{3, "2010-03-01T00:00:00Z"}, {61, "2012-08-01T00:00:00Z"}},
                   {{"src/main.cpp", std::string(kPeercoinHeader) + kMainV2},
                    {"src/util.h", kUtilV1},
                    {"src/kernel.cpp", std::string(kPeercoinHeader) + kKernel}}};
        p.repos = {r};
        projects.push_back(p);
    }
    {
        DemoProject p{"cardano", "Cardano", "ADA", "coin", "Computing", {}, {}};
        DemoRepo r{"cardano-sl",
                   "cardano-sl",
                   90,
                   "2018-07-05T00:00:00Z",
                   {{71, "2016-09-01T00:00:00Z"}},
                   {{"core/Slotting.hs", "module Slotting where\n"},
                    {"COPYING", kCardanoCopying}}};
        p.repos = {r};
        projects.push_back(p);
    }
    {
        DemoProject p{"zeepcoin", "ZeepCoin", "ZPC", "coin", "Finance", {}, {}};
        DemoRepo r{"zeep", "zeep", 0, "2018-01-20T00:00:00Z",
                   {{81, "2018-01-15T00:00:00Z"}}, shared_license_only};
        p.repos = {r};
        projects.push_back(p);
    }

    // five projects sharing the same LICENSE.md plus unique code
    const std::vector<std::pair<std::string, std::string>> license_peers = {
        {"aurora", "Aurora"},     {"dynamic", "Dynamic"}, {"hyperion", "Hyperion"},
        {"sentinel", "Sentinel"}, {"waverider", "Waverider"},
    };
    int commit_counter = 90;
    for (const auto& [id, name] : license_peers) {
        DemoProject p{id, name, "", "coin", "", {}, {}};
        DemoRepo r{id + "-core",
                   id,
                   5,
                   "2018-03-01T00:00:00Z",
                   {{++commit_counter, "2015-05-01T00:00:00Z"}},
                   {{"LICENSE.md", kSharedLicense},
                    {"src/chain.cpp", "// " + id + " chain logic\nint Chain() { return 1; }\n"},
                    {"src/pow.cpp", "// " + id + " proof of work\nint Pow() { return 2; }\n"},
                    {"src/node.cpp", "// " + id + " node\nint Node() { return 3; }\n"},
                    {"src/tx.cpp", "// " + id + " transactions\nint Tx() { return 4; }\n"}}};
        if (id == "aurora") {
            // forked from litecoin: shares one bitcoin-era commit and one
            // litecoin-only commit
            r.commits = {{4, "2010-08-01T00:00:00Z"},
                         {22, "2011-12-01T00:00:00Z"},
                         {121, "2015-05-01T00:00:00Z"}};
        }
        p.repos = {r};
        projects.push_back(p);
    }

    {
        DemoProject p{"omisego", "OmiseGO", "OMG", "token", "Finance", {}, {}};
        p.contracts = {{"contracts/omisego.sol", "deployed"}};
        projects.push_back(p);
    }
    {
        DemoProject p{"goldtoken", "GoldToken", "GLD", "token", "Metals", {}, {}};
        DemoRepo r{"gold-token",
                   "gold-token",
                   8,
                   "2018-04-01T00:00:00Z",
                   {{111, "2017-12-01T00:00:00Z"}},
                   {{"contracts/GoldToken.sol", kGoldRepoContract},
                    {"migrations/deploy.js", "module.exports = function() {};\n"}}};
        p.repos = {r};
        p.contracts = {{"repos/gold-token/contracts/GoldToken.sol", "repository"},
                       {"contracts/goldtoken_deployed.sol", "deployed"}};
        projects.push_back(p);
    }

    // --- write everything -------------------------------------------------

    fs::create_directories(dir);
    write_file(dir / "contracts/omisego.sol", kOmiseContract);
    write_file(dir / "contracts/goldtoken_deployed.sol", kGoldDeployedContract);

    std::string manifest;
    for (const DemoProject& p : projects) {
        ordered_json rec;
        rec["id"] = p.id;
        rec["name"] = p.name;
        rec["symbol"] = p.symbol;
        rec["kind"] = p.kind;
        if (!p.category.empty())
            rec["category"] = p.category;
        ordered_json repos = ordered_json::array();
        for (const DemoRepo& r : p.repos) {
            write_tree(dir / "repos" / r.repo_id, r.files);
            std::string log;
            for (const auto& [counter, iso] : r.commits)
                log += fake_commit(counter) + " " + iso + "\n";
            write_file(dir / "logs" / (r.repo_id + ".log"), log);
            ordered_json rj;
            rj["repo_id"] = r.repo_id;
            rj["name"] = r.name;
            rj["path"] = "repos/" + r.repo_id;
            rj["fork_count"] = r.fork_count;
            rj["last_update"] = r.last_update;
            rj["commit_log_path"] = "logs/" + r.repo_id + ".log";
            repos.push_back(std::move(rj));
        }
        rec["repos"] = std::move(repos);
        ordered_json contracts = ordered_json::array();
        for (const auto& [path, origin] : p.contracts)
            contracts.push_back({{"path", path}, {"origin", origin}});
        rec["contracts"] = std::move(contracts);
        manifest += rec.dump() + "\n";
    }
    write_file(dir / "manifest.jsonl", manifest);

    // baseline: the bitcoin history with materialized six-monthly trees
    std::string baseline_log;
    for (const auto& [counter, iso] : bitcoin_commits)
        baseline_log += fake_commit(counter) + " " + iso + "\n";
    write_file(dir / "baseline/commit_log.txt", baseline_log);

    using Tree = std::vector<std::pair<std::string, std::string>>;
    const std::vector<std::pair<int, Tree>> baseline_trees = {
        {1, {{"src/main.cpp", kMainV1}, {"src/util.h", kUtilV1}}},
        {2, {{"src/main.cpp", kMainV1}, {"src/util.h", kUtilV1}, {"src/net.cpp", kNet}}},
        {4,
         {{"src/main.cpp", kMainV2},
          {"src/util.h", kUtilV1},
          {"src/net.cpp", kNet},
          {"src/addrman.cpp", kAddrman}}},
        {5,
         {{"src/main.cpp", kMainV2},
          {"src/util.h", kUtilV1},
          {"src/net.cpp", kNet},
          {"src/addrman.cpp", kAddrman},
          {"src/wallet.cpp", kWallet}}},
        {6,
         {{"src/main.cpp", kMainV3},
          {"src/util.h", kUtilV2},
          {"src/net.cpp", kNet},
          {"src/addrman.cpp", kAddrman},
          {"src/wallet.cpp", kWallet}}},
        {7,
         {{"src/main.cpp", kMainV3},
          {"src/util.h", kUtilV2},
          {"src/net.cpp", kNet},
          {"src/addrman.cpp", kAddrman},
          {"src/wallet.cpp", kWallet},
          {"src/rpc.cpp", kRpc}}},
        {9,
         {{"src/main.cpp", kMainV3},
          {"src/util.h", kUtilV2},
          {"src/net.cpp", kNet},
          {"src/addrman.cpp", kAddrman},
          {"src/wallet.cpp", kWallet},
          {"src/rpc.cpp", kRpc},
          {"src/miner.cpp", kMiner}}},
    };
    for (const auto& [counter, tree] : baseline_trees)
        write_tree(dir / "baseline/trees" / fake_commit(counter), tree);

    ordered_json bc;
    bc["schema"] = "lineage-baseline-config/1";
    bc["commit_log"] = "baseline/commit_log.txt";
    bc["trees_dir"] = "baseline/trees";
    bc["start_time"] = "2009-08-01T00:00:00Z";
    write_file(dir / "baseline_config.json", bc.dump(2) + "\n");
}

} // namespace lineage
