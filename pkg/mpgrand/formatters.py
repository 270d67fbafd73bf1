"""
BBG Lite formatters for command results

Format handler results as Bloomberg Terminal-inspired text output.
Every formatter accepts a failed result and renders it as a single ERROR line.
"""
import json
from typing import Any

RULE = "─" * 70


def _error(result: dict[str, Any]) -> str:
    return f"ERROR: {result.get('error', 'Unknown error')}"


def format_gates(result: dict[str, Any]) -> str:
    """Format gates result as BBG Lite text.

    Example output:
        PARALLEL MULTIPLIER | GATE COST | 1 code

           n      N    AND    XOR  MAX W  STEPS  SPARSITY
        ──────────────────────────────────────────────────────────────────────
           5     32    136     49     16      5    26.56%
        ...
        VS PUBLISHED (ours minus theirs)
           5     32     +0     +0     +0     +0    +0.00
    """
    if not result.get("success"):
        return _error(result)

    reports = result["reports"]
    plural = "code" if len(reports) == 1 else "codes"
    lines = [f"PARALLEL MULTIPLIER | GATE COST | {len(reports)} {plural}", ""]
    lines.append(f"{'n':>4} {'N':>6} {'AND':>6} {'XOR':>6} {'MAX W':>6} {'STEPS':>6} {'SPARSITY':>9}")
    lines.append(RULE)
    for r in reports:
        lines.append(
            f"{r['n']:>4} {r['N']:>6} {r['and_gates']:>6} {r['xor_gates']:>6} "
            f"{r['max_row_weight']:>6} {r['steps']:>6} {r['sparsity'] * 100:>8.2f}%"
        )

    lines.append("")
    lines.append("VS PUBLISHED (ours minus theirs)")
    lines.append(RULE)
    for r in reports:
        d = r["deltas"]
        lines.append(
            f"{r['n']:>4} {r['N']:>6} {d['and_gates']:>+6} {d['xor_gates']:>+6} "
            f"{d['max_row_weight']:>+6} {d['steps']:>+6} {d['sparsity_percent']:>+9.2f}"
        )

    lines.append("")
    lines.append("ROW WEIGHT DETAIL")
    lines.append(RULE)
    for r in reports:
        lines.append(
            f"{r['n']:>4} {r['N']:>6}  heaviest row {r['heaviest_row']}, "
            f"{r['xor_ops']} two-input XORs over {r['rows']} rows"
        )

    lines.append("")
    lines.append(f"SEQUENCE: {result['sequence_file']}")
    lines.append("Try: mpgrand code --n N --show-h | mpgrand gates --all --format json")
    return "\n".join(lines)


def format_gates_json(result: dict[str, Any]) -> str:
    """Gate reports as a JSON array; the published values ride along per row."""
    if not result.get("success"):
        return _error(result)
    rows = [
        {
            "n": r["n"],
            "N": r["N"],
            "and_gates": r["and_gates"],
            "xor_gates": r["xor_gates"],
            "sparsity": r["sparsity"],
            "max_row_weight": r["max_row_weight"],
            "steps": r["steps"],
            "xor_ops": r["xor_ops"],
            "heaviest_row": r["heaviest_row"],
            "reference": r["reference"],
            "deltas": r["deltas"],
        }
        for r in result["reports"]
    ]
    return json.dumps(rows, indent=2)


def format_code(result: dict[str, Any]) -> str:
    """Format code result as BBG Lite text.

    Example output:
        POLAR CODE | N=32 K=16 | RATE 0.50

        INFO SET:    7 11 13 14 15 19 21 22 23 25 26 27 28 29 30 31
        FROZEN SET:  0 1 2 3 4 5 6 8 9 10 12 16 17 18 20 24
        H:           16 x 32
        ROW WEIGHTS: 8 8 8 ... 16
    """
    if not result.get("success"):
        return _error(result)

    lines = [f"POLAR CODE | N={result['N']} K={result['K']} | RATE {result['rate']:.2f}", ""]
    lines.append(f"INFO SET:    {' '.join(str(i) for i in result['info_set'])}")
    lines.append(f"FROZEN SET:  {' '.join(str(i) for i in result['frozen_set'])}")
    rows, cols = result["h_shape"]
    lines.append(f"H:           {rows} x {cols}")
    weights = result["row_weights"]
    lines.append(f"ROW WEIGHTS: {' '.join(str(w) for w in weights)}")
    lines.append(f"TOTAL:       {sum(weights)} ones, max {max(weights)}")

    if "h_rows" in result:
        lines.append("")
        lines.append("PARITY-CHECK MATRIX")
        lines.append(RULE)
        for i, row in enumerate(result["h_rows"]):
            lines.append(f"{i:>4}  {row}")

    lines.append("")
    lines.append(f"Try: mpgrand gates --n {result['n']} | mpgrand decode-one --n {result['n']} --ebn0 4")
    return "\n".join(lines)


def format_sequence(result: dict[str, Any]) -> str:
    """Format sequence result as BBG Lite text."""
    if not result.get("success"):
        return _error(result)

    lines = [f"RELIABILITY SEQUENCE | {result['length']} ENTRIES | VALID", ""]
    lines.append(f"FIRST: {' '.join(str(i) for i in result['first'])}")
    lines.append(f"LAST:  {' '.join(str(i) for i in result['last'])}")
    lines.append("")
    lines.append(f"PATH: {result['path']}")
    return "\n".join(lines)


def format_simulate(result: dict[str, Any]) -> str:
    """Format simulate result as BBG Lite text.

    Example output:
        BLER | N=32 4-QAM S=8 | 10,000 trials/point | seed 42

         EB/N0   ERRORS  MISMATCH  ABANDON        BLER     UNCODED   QUERIES
        ──────────────────────────────────────────────────────────────────────
           0.0     1234       900      334    0.1234       0.5012     612.3
        ...
        PATH: bler_N32_M4_S8.csv
    """
    if not result.get("success"):
        return _error(result)

    config = result["config"]
    lines = []
    if result["clamped"]:
        lines.append(
            f"WARNING: S={config['S']} exceeds L={result['L']} symbols per codeword; "
            f"using S={result['effective_cutoff']}"
        )
        lines.append("")
    lines.append(
        f"BLER | N={config['N']} {config['M']}-QAM S={result['effective_cutoff']} | "
        f"{config['trials_per_point']:,} trials/point | seed {config['master_seed']}"
    )
    lines.append("")
    lines.append(
        f"{'EB/N0':>6} {'ERRORS':>8} {'MISMATCH':>9} {'ABANDON':>8} "
        f"{'BLER':>10} {'UNCODED':>10} {'QUERIES':>9}"
    )
    lines.append(RULE)
    for p in result["points"]:
        lines.append(
            f"{p['ebn0_db']:>6.2f} {p['block_errors']:>8} {p['mismatches']:>9} {p['abandonments']:>8} "
            f"{p['bler']:>10.4g} {p['uncoded_bler']:>10.4g} {p['mean_queries']:>9.1f}"
        )
    lines.append("")
    lines.append(f"PATH: {result['path']}")
    lines.append(f"Try: mpgrand simulate ... --format {'json' if result['format'] == 'csv' else 'csv'}")
    return "\n".join(lines)


def format_decode_one(result: dict[str, Any]) -> str:
    """Format decode-one result as a step-by-step trace.

    Example output:
        DECODE | N=32 16-QAM S=8 | Eb/N0 4.00 dB | seed 0 | DECODED

        SENT:        00000000
        HARD:        00000000 (codeword)
        ...
        LATENCY:     30 cycles (2n + 2S' + 4, S'=8)
    """
    if not result.get("success"):
        return _error(result)

    verdict = "RECOVERED" if result["recovered"] else result["outcome"].upper()
    lines = [
        f"DECODE | N={result['N']} {result['M']}-QAM S={result['effective_cutoff']} | "
        f"Eb/N0 {result['ebn0_db']:.2f} dB | seed {result['seed']} | {verdict}",
        "",
    ]
    lines.append(f"SENT:        {result['transmitted']}")
    hard_note = "codeword" if result["hard_valid"] else f"not a codeword, {result['hard_bit_errors']} bit errors"
    lines.append(f"HARD:        {result['hard_decision']} ({hard_note})")
    lines.append(f"NOISE SIGMA: {result['sigma']:.4f} lattice units")
    lines.append("")

    lines.append("SYMBOLS (* = cut off)")
    lines.append(RULE)
    lines.append(f"{'#':>4}  {'SENT':>9}  {'RECEIVED':>17}  {'HARD':>9}  {'L(r,s)':>7}  CANDS")
    for s in result["symbols"]:
        mark = "*" if s["selected"] else " "
        sent = f"({s['sent'][0]},{s['sent'][1]})"
        received = f"({s['received'][0]:.3f},{s['received'][1]:.3f})"
        hard = f"({s['hard'][0]},{s['hard'][1]})"
        lines.append(f"{s['index']:>3}{mark}  {sent:>9}  {received:>17}  {hard:>9}  {s['likelihood']:>7.4f}  {s['candidates']}")
    lines.append("")

    lines.append(f"CUT-OFF:     {' '.join(str(i) for i in result['selected']) or '(none)'}")
    lines.append(f"TEPS:        {result['tep_count']} checked (budget {result['tep_budget']})")
    lines.append(f"SYNDROME:    {result['patterns_valid']} zero, {result['tep_count'] - result['patterns_valid']} nonzero")
    if result["decoded"] is not None:
        lines.append(f"WINNER:      {result['winner']} (distance {result['selected_distance']:.4f})")
        lines.append(f"DECODED:     {result['decoded']}")
        lines.append(f"INFO:        {result['info']}")
    else:
        lines.append("WINNER:      none, abandoned after exhausting all patterns")
    cutoff = result["effective_cutoff"]
    clamp = f", requested S={result['S']}" if cutoff != result["S"] else ""
    lines.append(f"LATENCY:     {result['latency_cycles']} cycles (2n + 2S' + 4, S'={cutoff}{clamp})")
    return "\n".join(lines)


def format_pattern_space(result: dict[str, Any]) -> str:
    """Format pattern-space result as BBG Lite text."""
    if not result.get("success"):
        return _error(result)

    lines = [f"SYMBOL ERROR PATTERN SPACE | S={result['S']}", ""]
    lines.append(f"{'N':>5} {'M':>5} {'L':>4} {'S':>3} {'4^L':>10} {'5^L':>10} {'BUDGET':>8} {'CYCLES':>7}")
    lines.append(RULE)
    for row in result["rows"]:
        lines.append(
            f"{row['N']:>5} {row['M']:>5} {row['L']:>4} {row['effective_cutoff']:>3} "
            f"{_power(4, row['L']):>10} {_power(5, row['L']):>10} {row['tep_budget']:>8} {row['latency_cycles']:>7}"
        )
    lines.append("")
    lines.append("Try: mpgrand pattern-space --s 4 | mpgrand simulate --n 5 --mqam 16 --s 8 --ebn0 0:2:8")
    return "\n".join(lines)


def _power(base: int, exponent: int) -> str:
    value = base ** exponent
    return f"{value:,}" if value < 10 ** 7 else f"{base}^{exponent}"
