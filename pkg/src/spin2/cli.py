"""Command-line client of the HTTP service.

Every subcommand builds one request body (from --config plus --set
overrides), posts it to the corresponding endpoint, and writes the response.
By default the service runs in-process; --server points the same client at a
remote instance.  JSON output embeds the request under "config" so a run can
be reproduced byte for byte with --replay.
"""

from __future__ import annotations

import io
import json
import sys

import click

ENDPOINTS = ("evolve", "poles", "spectrum", "regimes", "sbe", "oracle")


def _client(server: str | None):
    if server:
        import httpx

        return httpx.Client(base_url=server)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _set_path(cfg: dict, dotted: str, raw: str) -> None:
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    keys = dotted.split(".")
    node = cfg
    for k in keys[:-1]:
        node = node.setdefault(k, {})
        if not isinstance(node, dict):
            raise click.ClickException(f"cannot descend into '{k}' in --set {dotted}")
    node[keys[-1]] = value


def _load_config(config, sets, replay) -> dict:
    if replay is not None:
        if config is not None or sets:
            raise click.ClickException("--replay excludes --config/--set")
        doc = json.load(replay)
        if "config" not in doc:
            raise click.ClickException("replay file carries no 'config' block")
        return doc["config"]
    cfg = json.load(config) if config is not None else {}
    for item in sets:
        if "=" not in item:
            raise click.ClickException(f"--set needs key=value, got '{item}'")
        key, _, raw = item.partition("=")
        _set_path(cfg, key, raw)
    return cfg


def _post(endpoint: str, cfg: dict, server: str | None) -> dict:
    with _client(server) as client:
        resp = client.post(f"/{endpoint}", json=cfg)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise click.ClickException(f"{endpoint} failed ({resp.status_code}): {detail}")
    return resp.json()


def _g(x) -> str:
    # x + 0.0 folds negative zero into plain 0
    return f"{x + 0.0:.15g}"


def _csv_rows(endpoint: str, result: dict) -> list[list[str]]:
    if endpoint == "evolve":
        var = result.get("sweep_variable")

        def name(s):
            if s["sweep_value"] is None:
                return s["observable"]
            return f"{s['observable']}@{var}={_g(s['sweep_value'])}"

        rows = [["t", *(name(s) for s in result["series"])]]
        times = result["series"][0]["times"]
        cols = [s["values"] for s in result["series"]]
        for i, t in enumerate(times):
            rows.append([_g(t), *(_g(c[i]) for c in cols)])
        return rows
    if endpoint == "poles":
        var = result.get("sweep_variable") or "sweep_value"
        rows = [[var, "pole_re", "pole_im", "amplitude_re", "amplitude_im",
                 "equilibrium"]]
        for row in result["rows"]:
            sv = "" if row["sweep_value"] is None else _g(row["sweep_value"])
            eq = "" if row["equilibrium"] is None else _g(row["equilibrium"])
            amps = row["amplitudes"] or [None] * len(row["poles"])
            for p, a in zip(row["poles"], amps):
                rows.append([
                    sv, _g(p["re"]), _g(p["im"]),
                    "" if a is None else _g(a["re"]),
                    "" if a is None else _g(a["im"]),
                    eq,
                ])
        return rows
    if endpoint == "spectrum":
        rows = [["omega", "value"]]
        rows += [[_g(w), _g(v)] for w, v in
                 zip(result["omegas"], result["values"])]
        return rows
    if endpoint == "oracle":
        rows = [["observable", "deviation"]]
        rows += [[k, _g(v)] for k, v in sorted(result["deviations"].items())]
        rows.append(["passed", str(result["passed"]).lower()])
        return rows
    # regimes, sbe: flat key/value dump
    rows = [["key", "value"]]

    def walk(prefix: str, node) -> None:
        if isinstance(node, dict):
            for k in node:
                walk(f"{prefix}.{k}" if prefix else k, node[k])
        elif isinstance(node, list):
            for i, item in enumerate(node):
                walk(f"{prefix}[{i}]", item)
        elif isinstance(node, float):
            rows.append([prefix, _g(node)])
        else:
            rows.append([prefix, str(node)])

    walk("", result)
    return rows


def _emit(endpoint: str, cfg: dict, result: dict, out, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps({"config": cfg, "result": result}, indent=2,
                          sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        for row in _csv_rows(endpoint, result):
            buf.write(",".join(row) + "\n")
        text = buf.getvalue()
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _endpoint_command(endpoint: str, help_text: str):
    @click.command(name=endpoint, help=help_text)
    @click.option("--config", type=click.File("r"), default=None,
                  help="JSON request body.")
    @click.option("--set", "sets", multiple=True, metavar="KEY=VALUE",
                  help="Override a dotted config path; value parsed as JSON.")
    @click.option("--out", type=click.Path(dir_okay=False), default=None,
                  help="Write output here instead of stdout.")
    @click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                  default="json", show_default=True)
    @click.option("--server", default=None, metavar="URL",
                  help="Remote service URL (default: in-process).")
    @click.option("--replay", type=click.File("r"), default=None,
                  help="Re-run the config embedded in a previous JSON output.")
    def cmd(config, sets, out, fmt, server, replay):
        cfg = _load_config(config, sets, replay)
        result = _post(endpoint, cfg, server)
        if endpoint == "oracle" and not result["passed"]:
            _emit(endpoint, cfg, result, out, fmt)
            raise click.ClickException(
                "oracle deviation exceeds tolerance "
                f"{result['tolerance']:g}: {result['deviations']}"
            )
        _emit(endpoint, cfg, result, out, fmt)

    return cmd


@click.group()
@click.version_option(package_name="spin2")
def main() -> None:
    """Dynamics of two Ising-coupled dissipative spins (white-noise limit)."""


_HELP = {
    "evolve": "Time evolution of the longitudinal observables.",
    "poles": "Pole/amplitude decomposition of one observable.",
    "spectrum": "Fourier-regime profile Re F(-i omega) of one observable.",
    "regimes": "Crossover temperatures, relaxation rates, low-T pole tables.",
    "sbe": "Spin-boson-environment reduction seen by the sigma spin.",
    "oracle": "Cross-check the analytic solution against direct integration.",
}
for _ep in ENDPOINTS:
    main.add_command(_endpoint_command(_ep, _HELP[_ep]))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
