"""Run orchestration: validated configs, deterministic CSVs, figure presets.

Every run writes flat CSV files stamped with the format comment
`# resonance-lab v1`.  Floats are serialized with 9 significant digits and
LF line endings, so identical configs produce byte-identical files.  Exit
codes: 0 success, 2 partial results (some track points NotFound), 1
configuration error (raised here as ConfigError, mapped by the CLI).

The numbered figure presets bundle the grids and parameters of the six
standard experiment configurations; each also emits a gnuplot-dialect
script referencing the CSVs it wrote.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .cylinder import SurfacePoint, bessel_j, bessel_y, bessel_zero, hankel
from .delta1d import delta_phase_derivative, delta_resonance
from .errors import ConfigError, DomainError, MissingInput, RangeError
from .finder import Classification, GuessKind, track
from .lambert import lambert_w
from .phase import PhaseTable, total_phase_derivative
from .well import CouplingFamily, Well, classify_zero_energy

FORMAT_VERSION = "1"
FORMAT_STAMP = "# resonance-lab v1"

SUBCOMMANDS = ("track", "phase", "classify", "delta1d", "bessel-eval", "lambert-eval")

# eps grids of the standard experiment presets
QUAD_EPS = tuple(
    math.copysign(k * k * 0.0036, k) for k in range(-15, 16) if k != 0
)
DEEPENING_EPS = tuple(-0.1 * k for k in range(2, 26))


def _format_cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    x = float(v)
    if x == 0.0:
        x = 0.0  # fold -0.0
    return "%.9g" % x


@dataclass(frozen=True)
class CsvDocument:
    """An in-memory CSV with deterministic serialization."""

    header: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.header):
                raise DomainError(
                    f"row width {len(row)} != header width {len(self.header)}"
                )

    def to_text(self) -> str:
        lines = [FORMAT_STAMP, ",".join(self.header)]
        for row in self.rows:
            lines.append(",".join(_format_cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_text(), encoding="ascii", newline="\n")
        return path

    @classmethod
    def parse_text(cls, text: str) -> "CsvDocument":
        """Read back an emitted document (comments skipped, floats parsed)."""
        lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
        if not lines:
            raise DomainError("no header line found")
        header = tuple(lines[0].split(","))
        rows = []
        for ln in lines[1:]:
            row = []
            for cell in ln.split(","):
                try:
                    row.append(float(cell))
                except ValueError:
                    row.append(cell)
            rows.append(tuple(row))
        return cls(header=header, rows=tuple(rows))


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    paths: tuple[Path, ...]


@dataclass(frozen=True)
class RunConfig:
    """Validated description of one CLI run.

    Families are specified by the index l0 of the Bessel zero fixing the
    base depth: a0 = j_{l0,1}/rho, so that J_{l0}(rho a0) = 0.
    """

    subcommand: str
    output_dir: str = "."
    output_name: str | None = None
    format_version: str = FORMAT_VERSION
    rho: float = 1.0
    # track
    ell: int | None = None
    a0_zero_order: int | None = None
    branch: int | None = None
    eps_grid: tuple[float, ...] | None = None
    # phase
    eps_offsets: tuple[float, ...] | None = None
    lambda_min: float | None = None
    lambda_max: float | None = None
    steps: int | None = None
    per_mode: bool = False
    # classify / delta1d
    a: float | None = None
    l_max: int | None = None
    k_max: int | None = None
    # bessel-eval / lambert-eval
    kind: str | None = None
    order: int | None = None
    abs_z: float | None = None
    arg_z: float | None = None
    branch_n: int | None = None
    x_re: float | None = None
    x_im: float | None = None

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.format_version != FORMAT_VERSION:
            raise ConfigError(
                f"unsupported format version {self.format_version!r}; only "
                f"{FORMAT_VERSION!r} exists"
            )
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ConfigError(f"rho must be positive and finite, got {self.rho}")
        checker = getattr(self, f"_check_{self.subcommand.replace('-', '_')}")
        checker()

    def _check_track(self) -> None:
        if self.ell is None or self.a0_zero_order is None:
            raise ConfigError("track needs --l and --a0sq-from-zero")
        if self.eps_grid is None or len(self.eps_grid) == 0:
            raise ConfigError("track needs a nonempty --eps-grid")
        for e in self.eps_grid:
            if e == 0:
                raise ConfigError(
                    "eps grid contains the value 0, the degenerate family point"
                )
            if not math.isfinite(e):
                raise ConfigError(f"eps grid contains the non-finite value {e}")
        diffs = [b - a for a, b in zip(self.eps_grid, self.eps_grid[1:])]
        if diffs and not (all(d > 0 for d in diffs) or all(d < 0 for d in diffs)):
            raise ConfigError("eps grid must be strictly monotone")
        if abs(self.ell) == 1 and self.branch == 0:
            raise ConfigError("branch index 0 is not a valid mode-1 branch")

    def _check_phase(self) -> None:
        if self.a0_zero_order is None:
            raise ConfigError("phase needs --a0sq-from-zero")
        self._grid_check()
        offsets = self.eps_offsets
        if offsets is None or len(offsets) not in (1, 3):
            raise ConfigError("phase needs --eps with one value e or the list 0,e,-e")
        if len(offsets) == 1:
            if not (offsets[0] > 0):
                raise ConfigError(f"single eps offset must be > 0, got {offsets[0]}")
        else:
            srt = sorted(offsets)
            if not (srt[1] == 0 and srt[2] > 0 and srt[0] == -srt[2]):
                raise ConfigError(
                    f"eps offsets must form {{0, +e, -e}}, got {list(offsets)}"
                )

    def _grid_check(self) -> None:
        if self.lambda_max is None or self.steps is None:
            raise ConfigError("a lambda grid needs --lambda-max and --steps")
        lo = 0.0 if self.lambda_min is None else self.lambda_min
        if not (self.lambda_max > lo >= 0):
            raise ConfigError(
                f"need 0 <= lambda-min < lambda-max, got {lo}, {self.lambda_max}"
            )
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")

    def _check_classify(self) -> None:
        if self.a is None or not (self.a > 0):
            raise ConfigError("classify needs --a > 0")
        if self.l_max is None or self.l_max < 2:
            raise ConfigError("classify needs --lmax >= 2")

    def _check_delta1d(self) -> None:
        if self.a is None or not (self.a > 0):
            raise ConfigError("delta1d needs --a > 0")
        if self.k_max is None or self.k_max < 1:
            raise ConfigError("delta1d needs --k-max >= 1")
        self._grid_check()

    def _check_bessel_eval(self) -> None:
        if self.kind not in ("j", "y", "h1", "h2"):
            raise ConfigError(f"kind must be one of j, y, h1, h2, got {self.kind!r}")
        if self.order is None or self.abs_z is None or self.arg_z is None:
            raise ConfigError("bessel-eval needs order, |z| and arg z")
        if not (self.abs_z > 0):
            raise ConfigError(f"|z| must be positive, got {self.abs_z}")

    def _check_lambert_eval(self) -> None:
        if self.branch_n is None or self.x_re is None or self.x_im is None:
            raise ConfigError("lambert-eval needs n, re x and im x")


def _family(config: RunConfig) -> CouplingFamily:
    a0 = bessel_zero(config.a0_zero_order, 1) / config.rho
    return CouplingFamily(a0, config.rho)


def _guess_kind(ell: int, branch: int | None) -> GuessKind:
    n = abs(ell)
    if n == 0:
        return GuessKind.disappearing0()
    if n == 1:
        return GuessKind.persist_lw(-1 if branch is None else branch)
    return GuessKind.persist_sqrt(0 if branch is None else branch)


def _lambda_grid(config: RunConfig) -> np.ndarray:
    lo = 0.0 if config.lambda_min is None else config.lambda_min
    if lo == 0.0:
        # lambda = 0 is excluded; start one step in
        return config.lambda_max * np.arange(1, config.steps + 1) / config.steps
    return np.linspace(lo, config.lambda_max, config.steps)


def _out_path(config: RunConfig, name: str) -> Path:
    outdir = Path(config.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir / name


TRACK_HEADER = (
    "epsilon",
    "re_guess",
    "im_guess",
    "re_exact",
    "im_exact",
    "residual",
    "class",
)


def _run_track(config: RunConfig) -> RunResult:
    family = _family(config)
    kind = _guess_kind(config.ell, config.branch)
    trk = track(config.ell, family, config.eps_grid, kind)
    rows = []
    for rec in trk.records:
        g = rec.guess.value
        r = rec.refined.value
        rows.append(
            (
                rec.epsilon,
                g.real,
                g.imag,
                r.real,
                r.imag,
                rec.residual,
                rec.classification.value,
            )
        )
    doc = CsvDocument(TRACK_HEADER, tuple(rows))
    path = doc.write(_out_path(config, f"{config.output_name or 'track'}.csv"))
    partial = any(
        rec.classification is Classification.NOT_FOUND for rec in trk.records
    )
    return RunResult(2 if partial else 0, (path,))


def _run_phase(config: RunConfig) -> RunResult:
    family = _family(config)
    offsets = config.eps_offsets
    if len(offsets) == 1:
        e = offsets[0]
    else:
        e = max(offsets)
    grid = _lambda_grid(config)
    curves = {
        "res": family.well(0.0),
        "above": family.well(e),
        "below": family.well(-e),
    }
    include = None
    if config.per_mode:
        include = total_phase_derivative(float(grid[-1]), curves["res"]).l_max
    tables = {
        name: PhaseTable.build(grid, well, include_modes=include)
        for name, well in curves.items()
    }
    header = ["lambda", "res", "above", "below"]
    columns = [grid] + [tables[name].total for name in ("res", "above", "below")]
    if config.per_mode:
        for name in ("res", "above", "below"):
            for ell_idx in range(include + 1):
                header.append(f"{name}_l{ell_idx}")
                columns.append(tables[name].per_mode[ell_idx])
    rows = tuple(tuple(col[i] for col in columns) for i in range(len(grid)))
    doc = CsvDocument(tuple(header), rows)
    path = doc.write(_out_path(config, f"{config.output_name or 'phase'}.csv"))
    return RunResult(0, (path,))


def _run_classify(config: RunConfig) -> RunResult:
    classes = classify_zero_energy(Well(config.a, config.rho), config.l_max)
    rows = tuple((c.mode, c.kind.value) for c in classes)
    doc = CsvDocument(("mode", "kind"), rows)
    path = doc.write(_out_path(config, f"{config.output_name or 'classify'}.csv"))
    return RunResult(0, (path,))


def _run_delta1d(config: RunConfig) -> RunResult:
    name = config.output_name or "delta1d"
    ks = range(1, config.k_max + 1)
    res = {k: delta_resonance(config.a, k) for k in ks}
    res_doc = CsvDocument(
        ("k", "re", "im"),
        tuple((k, res[k].real, res[k].imag) for k in ks),
    )
    res_path = res_doc.write(_out_path(config, f"{name}_resonances.csv"))

    grid = _lambda_grid(config)
    poles = [res[k] for k in ks] + [-res[k].conjugate() for k in ks]
    bw = -1.0 / math.pi + sum(
        (-p.imag) / (math.pi * np.abs(grid - p) ** 2) for p in poles
    )
    rows = tuple(
        (lam, delta_phase_derivative(config.a, lam), bw[i])
        for i, lam in enumerate(grid)
    )
    phase_doc = CsvDocument(("lambda", "sigma_prime", "bw_approx"), rows)
    phase_path = phase_doc.write(_out_path(config, f"{name}_phase.csv"))
    return RunResult(0, (res_path, phase_path))


def _run_bessel_eval(config: RunConfig) -> RunResult:
    pt = SurfacePoint.from_polar(config.abs_z, config.arg_z)
    if config.kind == "j":
        cv = bessel_j(config.order, pt.value)
    elif config.kind == "y":
        cv = bessel_y(config.order, pt.value)
    else:
        cv = hankel(1 if config.kind == "h1" else 2, config.order, pt)
    doc = CsvDocument(
        (
            "kind",
            "ell",
            "abs_z",
            "arg_z",
            "re_value",
            "im_value",
            "re_derivative",
            "im_derivative",
        ),
        (
            (
                config.kind,
                config.order,
                config.abs_z,
                config.arg_z,
                cv.value.real,
                cv.value.imag,
                cv.derivative.real,
                cv.derivative.imag,
            ),
        ),
    )
    path = doc.write(_out_path(config, f"{config.output_name or 'bessel_eval'}.csv"))
    return RunResult(0, (path,))


def _run_lambert_eval(config: RunConfig) -> RunResult:
    x = complex(config.x_re, config.x_im)
    w = lambert_w(config.branch_n, x)
    residual = abs(w * np.exp(w) - x)
    doc = CsvDocument(
        ("n", "x_re", "x_im", "w_re", "w_im", "residual"),
        ((config.branch_n, x.real, x.imag, w.real, w.imag, residual),),
    )
    path = doc.write(_out_path(config, f"{config.output_name or 'lambert_eval'}.csv"))
    return RunResult(0, (path,))


_RUNNERS = {
    "track": _run_track,
    "phase": _run_phase,
    "classify": _run_classify,
    "delta1d": _run_delta1d,
    "bessel-eval": _run_bessel_eval,
    "lambert-eval": _run_lambert_eval,
}


def run(config: RunConfig) -> RunResult:
    """Validate and execute one run; returns exit code and written paths."""
    config.validate()
    try:
        return _RUNNERS[config.subcommand](config)
    except (DomainError, RangeError) as exc:
        # parameter combinations the library rejects are config errors
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# figure presets
# ---------------------------------------------------------------------------

FIGURE_PANELS = {
    1: ("left", "middle", "right"),
    2: (),
    3: ("left", "right"),
    4: (),
    5: ("n-1", "n-2"),
    6: ("left", "right"),
}


def figure_jobs(figure: int, panel: str | None = None) -> list[RunConfig]:
    """The preset RunConfigs of one numbered figure (optionally one panel)."""
    if figure not in FIGURE_PANELS:
        raise ConfigError(f"--figure must be 1..6, got {figure}")
    panels = FIGURE_PANELS[figure]
    if panel is not None:
        if panel not in panels:
            raise ConfigError(
                f"figure {figure} has panels {list(panels) or 'none'}, got {panel!r}"
            )
        panels = (panel,)

    if figure == 1:
        modes = {
            "left": (1, 0, -1),
            "middle": (2, 1, 0),
            "right": (3, 2, 0),
        }
        return [
            RunConfig(
                subcommand="track",
                output_name=f"figure1_{p}",
                ell=modes[p][0],
                a0_zero_order=modes[p][1],
                branch=modes[p][2],
                eps_grid=QUAD_EPS,
            )
            for p in panels
        ]
    if figure == 2:
        return [
            RunConfig(
                subcommand="track",
                output_name="figure2",
                ell=0,
                a0_zero_order=1,
                eps_grid=DEEPENING_EPS,
            )
        ]
    if figure == 3:
        lam_max = {"left": 0.1, "right": 0.15}
        order = {"left": 1, "right": 0}
        return [
            RunConfig(
                subcommand="phase",
                output_name=f"figure3_{p}",
                a0_zero_order=order[p],
                eps_offsets=(0.09,),
                lambda_max=lam_max[p],
                steps=200,
            )
            for p in panels
        ]
    if figure == 4:
        return [
            RunConfig(
                subcommand="delta1d",
                output_name="figure4",
                a=10.0,
                k_max=3,
                lambda_max=11.0,
                steps=440,
            )
        ]
    if figure == 5:
        return [
            RunConfig(
                subcommand="track",
                output_name=f"figure5_{p}",
                ell=1,
                a0_zero_order=0,
                branch=int(p.replace("n", "")),
                eps_grid=QUAD_EPS,
            )
            for p in panels
        ]
    # figure 6
    order = {"left": 1, "right": 0}
    return [
        RunConfig(
            subcommand="phase",
            output_name=f"figure6_{p}",
            a0_zero_order=order[p],
            eps_offsets=(0.09,),
            lambda_max=1.0,
            steps=400,
        )
        for p in panels
    ]


def run_figure(
    figure: int,
    panel: str | None = None,
    output_dir: str = ".",
    format_version: str = FORMAT_VERSION,
) -> RunResult:
    """Run all jobs of a figure preset and emit its plot script."""
    jobs = figure_jobs(figure, panel)
    code = 0
    paths: list[Path] = []
    for job in jobs:
        result = run(replace(job, output_dir=output_dir, format_version=format_version))
        code = max(code, result.exit_code)
        paths.extend(result.paths)
    script = emit_plot_script(
        paths, figure, Path(output_dir) / f"figure{figure}.gp"
    )
    paths.append(script)
    return RunResult(code, tuple(paths))


# dashed overlay parameters of the figure 6 preset (resonance of the
# eps = +0.09 member of each family, plot convention without the 1/pi)
_FIG6_OVERLAYS = {
    "figure6_left": "0.0017315/((x-0.2100356)**2 + 0.0017315**2) - 0.8*sqrt(x)",
    "figure6_right": "0.0344571/((x-0.1119944)**2 + 0.0344571**2) + log(x)",
}


def emit_plot_script(
    csv_paths, figure_id: int, out_path: str | Path
) -> Path:
    """Write a gnuplot-dialect script laying out one figure's CSVs.

    Purely a convenience for eyeballing results; no test depends on the
    rendered output.
    """
    paths = [Path(p) for p in csv_paths]
    for p in paths:
        if p.suffix == ".csv" and not p.exists():
            raise MissingInput(f"plot input {p} does not exist")
    csvs = [p for p in paths if p.suffix == ".csv"]

    lines = [
        f"# gnuplot layout for figure {figure_id}",
        "set datafile separator ','",
        "set key autotitle columnhead",
    ]
    if figure_id in (1, 5):
        lines.append("set size ratio -1")
        for p in csvs:
            lines.append(
                f"plot '{p.name}' using 're_guess':'im_guess' with points pt 6 title 'guess', \\"
            )
            lines.append(
                f"     '{p.name}' using 're_exact':'im_exact' with points pt 7 title 'exact'"
            )
            lines.append("pause -1")
    elif figure_id == 2:
        for p in csvs:
            lines.append(
                f"plot '{p.name}' using 'epsilon':'im_guess' with points pt 6, \\"
            )
            lines.append(
                f"     '{p.name}' using 'epsilon':'im_exact' with points pt 7"
            )
            lines.append("pause -1")
    elif figure_id == 4:
        for p in csvs:
            if p.name.endswith("_resonances.csv"):
                lines.append(
                    f"plot '{p.name}' using 're':'im' with points pt 7 title 'resonances'"
                )
            else:
                lines.append(
                    f"plot '{p.name}' using 'lambda':'sigma_prime' with lines, \\"
                )
                lines.append(
                    f"     '{p.name}' using 'lambda':'bw_approx' with lines dashtype 2"
                )
            lines.append("pause -1")
    else:
        for p in csvs:
            overlay = _FIG6_OVERLAYS.get(p.stem) if figure_id == 6 else None
            tail = f", \\\n     {overlay} with lines dashtype 2 title 'bw'" if overlay else ""
            lines.append(
                f"plot '{p.name}' using 'lambda':'res' with lines, \\"
            )
            lines.append(
                f"     '{p.name}' using 'lambda':'above' with lines, \\"
            )
            lines.append(
                f"     '{p.name}' using 'lambda':'below' with lines" + tail
            )
            lines.append("pause -1")

    out_path = Path(out_path)
    out_path.write_text("\n".join(lines) + "\n", encoding="ascii", newline="\n")
    return out_path
