#!/usr/bin/env python3
"""Generate the shipped test corpus and replay fixtures.

The corpus is synthetic: one contract per case, each built from a small
template for its class with the vulnerable line annotated both in the header
and inline. Replay files simulate each analyzer with a seeded RNG driven by
its published average recall/precision and scan time, so the campaign is
deterministic and byte-identical on every run.
"""

import argparse
import csv
import datetime as dt
import json
import random
from pathlib import Path

LISTING = """/*
 * @source: https://consensys.github.io/smart-contract-best-practices/known_attacks/
 * @author: consensys
 * @vulnerable_at_lines: 17
 */

pragma solidity ^0.5.0;

contract Reentrancy_insecure {

    // INSECURE
    mapping (address => uint) private userBalances;

    function withdrawBalance() public {
        uint amountToWithdraw = userBalances[msg.sender];
        // <yes> <report> REENTRANCY
        (bool success, ) = msg.sender.call.value(amountToWithdraw)(""); // At this point, the caller's code is executed, and can call withdrawBalance again
        require(success);
        userBalances[msg.sender] = 0;
    }
}
"""

# (directory, marker, case count, body lines). "@@" marks the vulnerable line.
CLASSES = [
    ("reentrancy", "REENTRANCY", 81, [
        "mapping (address => uint) public credit;",
        "function withdraw(uint amount) public {",
        "    require(credit[msg.sender] >= amount);",
        "@@    require(msg.sender.call.value(amount)());",
        "    credit[msg.sender] -= amount;",
        "}",
    ]),
    ("arithmetic", "ARITHMETIC", 65, [
        "mapping (address => uint256) public balanceOf;",
        "function transfer(address to, uint256 value) public {",
        "    require(balanceOf[msg.sender] - value >= 0);",
        "    balanceOf[msg.sender] -= value;",
        "@@    balanceOf[to] += value;",
        "}",
    ]),
    ("unchecked_send", "UNCHECKED_LL_CALLS", 52, [
        "address public owner = msg.sender;",
        "function payout(address winner, uint amount) public {",
        "    require(msg.sender == owner);",
        "@@    winner.send(amount);",
        "}",
    ]),
    ("unsafe_delegatecall", "UNSAFE_DELEGATECALL", 12, [
        "address public lib;",
        "function forward(bytes data) public {",
        "@@    require(lib.delegatecall(data));",
        "}",
    ]),
    ("tod", "TOD", 60, [
        "uint public reward;",
        "address public owner = msg.sender;",
        "function setReward() public payable {",
        "    require(msg.sender == owner);",
        "@@    owner.transfer(reward);",
        "    reward = msg.value;",
        "}",
    ]),
    ("time_manipulation", "TIME_MANIPULATION", 60, [
        "uint public pastBlockTime;",
        "function bet() public payable {",
        "    require(msg.value == 10 ether);",
        "@@    require(now != pastBlockTime);",
        "    pastBlockTime = now;",
        "}",
    ]),
    ("bad_randomness", "BAD_RANDOMNESS", 10, [
        "uint8 private answer;",
        "function draw() public {",
        "@@    answer = uint8(keccak256(block.blockhash(block.number - 1), now));",
        "}",
    ]),
    ("tx_origin", "TX_ORIGIN", 10, [
        "address public owner = msg.sender;",
        "function sendTo(address receiver, uint amount) public {",
        "@@    require(tx.origin == owner);",
        "    receiver.transfer(amount);",
        "}",
    ]),
    ("unsafe_suicide", "UNSAFE_SUICIDE", 11, [
        "function kill() public {",
        "@@    selfdestruct(msg.sender);",
        "}",
    ]),
    ("gasless_send", "GASLESS_SEND", 11, [
        "address[] public payees;",
        "function refundAll() public {",
        "    for (uint i = 0; i < payees.length; i++) {",
        "@@        payees[i].send(1 wei);",
        "    }",
        "}",
    ]),
]
SAFE_CASES = 17
SAFE_BODY = [
    "mapping (address => uint) public credit;",
    "function withdraw(uint amount) public {",
    "    require(credit[msg.sender] >= amount);",
    "    credit[msg.sender] -= amount;",
    "    msg.sender.transfer(amount);",
    "}",
]

PRAGMAS = ["^0.4.24", "^0.4.19", "0.4.25", "^0.4.21"]

# name, capability ids, P_avg, R_avg, total scan seconds, valid scans.
TOOLS = [
    ("Securify", [1, 3, 5], 1.000, 0.404, 1.3 * 3600, 350),
    ("VeriSmart", [2], 0.984, 0.954, 1.4 * 3600, 82),
    ("Mythril", [1, 2, 3, 4, 6, 7, 8, 9], 1.000, 0.582, 55.6 * 3600, 329),
    ("Oyente", [1, 2, 3, 5], 0.977, 0.341, 12 * 60, 167),
    ("ConFuzzius", [1, 2, 3, 4, 5, 6, 7, 9], 0.917, 0.632, 86.0 * 3600, 349),
    ("sFuzz", [1, 2, 3, 4, 6, 7, 10], 0.991, 0.306, 33.2 * 3600, 134),
    ("Slither", [1, 3, 4, 6, 8, 9], 0.991, 0.896, 5.3 * 60, 316),
    ("Conkas", [1, 2, 3, 5, 6], 0.990, 0.947, 7.6 * 3600, 349),
    ("GNNSCVD", [1, 7], 1.000, 0.127, 20.6 * 60, 50),
    ("Eth2Vec", [1, 2, 6, 10], 0.980, 0.355, 7.9 * 60, 216),
    ("Solhint", [1, 3, 4, 6, 8, 9], 0.967, 0.796, 9.6 * 60, 389),
    ("SmartCheck", [1, 2, 3, 4, 6, 8, 10], 0.910, 0.488, 17.7 * 60, 389),
    ("Maian", [9], 1.000, 0.363, 6.3 * 3600, 371),
]

# Native rule names for two analyzers; the registry maps them back to classes.
NATIVE_RULES = {
    "Slither": {1: "reentrancy-eth", 3: "unchecked-send", 4: "controlled-delegatecall",
                6: "timestamp", 8: "tx-origin", 9: "suicidal"},
    "Mythril": {1: "SWC-107", 2: "SWC-101", 3: "SWC-104", 4: "SWC-112",
                6: "SWC-116", 7: "SWC-120", 8: "SWC-115", 9: "SWC-106"},
}

MARKERS = {i + 1: c[1] for i, c in enumerate(CLASSES)}


def render(name, pragma, body, marker, source_note):
    """Returns (text, vulnerable line numbers)."""
    out = ["/*", f" * @source: {source_note}", " * @author: scbench fixtures", " * @vulnerable_at_lines: {LINES}", " */", "",
           f"pragma solidity {pragma};", "", f"contract {name} {{"]
    lines = []
    for b in body:
        if b.startswith("@@"):
            code = "    " + b[2:]
            indent = code[:len(code) - len(code.lstrip())]
            out.append(f"{indent}// <yes> <report> {marker}")
            out.append(code)
            lines.append(len(out))
        else:
            out.append("    " + b)
    out.append("}")
    text = "\n".join(out) + "\n"
    return text.replace("{LINES}", ", ".join(map(str, lines))), lines


def write_corpus(root, rng):
    cases = []  # (id, class number or None, vulnerable lines)
    for cls, (directory, marker, count, body) in enumerate(CLASSES, start=1):
        d = root / "labelled" / directory
        d.mkdir(parents=True, exist_ok=True)
        start = 0
        if directory == "reentrancy":
            (d / "reentrancy_insecure.sol").write_text(LISTING)
            cases.append(("reentrancy/reentrancy_insecure.sol", 1, [17]))
            start = 1
        for i in range(start, count):
            name = f"{directory.title().replace('_', '')}{i:03d}"
            extra = [f"uint256 public constant SEED = {rng.randrange(1, 10**9)};"]
            if i % 7 == 3:
                # a second annotated site in the same contract
                extra += ["function again() public {"] + [b for b in body if b.startswith("@@")] + ["}"]
            text, lines = render(name, rng.choice(PRAGMAS), extra + body, marker, "synthetic")
            (d / f"{name.lower()}.sol").write_text(text)
            cases.append((f"{directory}/{name.lower()}.sol", cls, lines))
    d = root / "labelled" / "safe"
    d.mkdir(parents=True, exist_ok=True)
    for i in range(SAFE_CASES):
        name = f"Safe{i:03d}"
        body = [f"uint256 public constant SEED = {rng.randrange(1, 10**9)};"] + SAFE_BODY
        text = "\n".join([f"pragma solidity {rng.choice(PRAGMAS)};", "", f"contract {name} {{"] +
                         ["    " + b for b in body] + ["}"]) + "\n"
        (d / f"{name.lower()}.sol").write_text(text)
        cases.append((f"safe/{name.lower()}.sol", None, []))
    return sorted(cases)


def write_replay(root, cases, rng):
    d = root / "replay"
    d.mkdir(parents=True, exist_ok=True)
    for name, caps, precision, recall, total_s, valid in TOOLS:
        avg_ms = total_s / valid * 1000
        fail_rate = min(0.25, 1 - valid / len(cases))
        fp_rate = min(0.5, (1 - precision) * 3)
        rules = NATIVE_RULES.get(name, {})
        with open(d / f"{name}.jsonl", "w", newline="\n") as f:
            for cid, cls, lines in cases:
                entry = {"contract": cid}
                roll = rng.random()
                if roll < fail_rate:
                    entry["status"] = "timeout" if roll < fail_rate / 2 else "tool_error"
                    entry["duration_ms"] = 0
                    f.write(json.dumps(entry) + "\n")
                    continue
                entry["status"] = "ok"
                entry["duration_ms"] = max(1, round(avg_ms * rng.uniform(0.5, 1.5)))
                findings = []
                if cls in caps and (rng.random() < recall or cid == "reentrancy/reentrancy_insecure.sol"):
                    findings.append({"rule": rules.get(cls, MARKERS[cls]), "lines": lines})
                if cls is None and rng.random() < fp_rate:
                    v = rng.choice(caps)
                    findings.append({"rule": rules.get(v, MARKERS[v]), "lines": [9]})
                entry["findings"] = findings
                f.write(json.dumps(entry) + "\n")


def write_metadata(root, cases, rng):
    start = dt.datetime(2016, 1, 1, tzinfo=dt.timezone.utc)
    span = (dt.datetime(2023, 12, 31, tzinfo=dt.timezone.utc) - start).total_seconds()
    with open(root / "metadata.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "created_at", "tx_value"])
        for cid, _, _ in cases:
            ts = start + dt.timedelta(seconds=int(rng.random() * span))
            wei = rng.randrange(0, 50) * 10**17
            w.writerow([cid, ts.strftime("%Y-%m-%dT%H:%M:%SZ"), str(wei)])


def write_scaled(root, rng):
    d = root / "scaled"
    d.mkdir(parents=True, exist_ok=True)
    with open(d / "contracts.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["address", "source"])
        for i in range(24):
            addr = "0x" + "".join(rng.choice("0123456789abcdef") for _ in range(40))
            seed = i if i % 6 else i - 1  # every sixth contract repeats its predecessor
            body = f"contract C{seed} {{\n    uint public x = {seed};\n}}\n"
            if i % 6 == 0 and i > 0:
                body = f"// mirror of an earlier deployment\ncontract C{seed} {{\n  uint public x = {seed}; /* same */\n}}\n"
            pragma = "" if i % 8 == 5 else "pragma solidity ^0.4.24;\n"
            w.writerow([addr, pragma + body])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures")
    ap.add_argument("--seed", type=int, default=20230601)
    args = ap.parse_args()
    cases = write_corpus(args.out, random.Random(args.seed))
    write_replay(args.out, cases, random.Random(args.seed + 1))
    write_metadata(args.out, cases, random.Random(args.seed + 2))
    write_scaled(args.out, random.Random(args.seed + 3))
    print(f"{len(cases)} cases written under {args.out}")


if __name__ == "__main__":
    main()
