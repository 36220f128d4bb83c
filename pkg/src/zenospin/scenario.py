"""Declarative scenario files: a minimal key = value grammar with sections.

A scenario document looks like

    # full-line or trailing comments
    [scenario]
    name = fig4
    task = field-scan          # spectrum | branch-scan | field-scan |
                               # evolve | deuteration
    kind = quantum             # quantum | classical

    [system]
    I1 = 0.5
    I2 = 0.5
    a1 = 1.5
    a2 = 3.0
    kS = 15.0
    kT_ratio = 0.2             # or kT = <absolute rate>, never both

    [grid]
    start = 0.05
    stop = 5.0
    count = 50
    scale = linear             # linear | log
    unit = us^-1               # us^-1 | gauss (field grids), us (evolve)

All frequencies and rates are angular 1/us; magnetic fields are accepted in
gauss wherever a `unit = gauss` grid or a `B_gauss` system key appears.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioError
from .liouville import KINDS, QUANTUM
from .magnetics import SpinSystem, larmor_frequency
from .sensitivity import DEUTERIUM_COUPLING_SCALE, DEUTERIUM_SPIN

TASKS = ("spectrum", "branch-scan", "field-scan", "evolve", "deuteration")

GRID_TASKS = ("branch-scan", "field-scan", "evolve", "deuteration")
FIELD_GRID_TASKS = ("field-scan", "deuteration")

_SECTIONS = ("scenario", "system", "grid", "pairs")


@dataclass(frozen=True)
class GridSpec:
    """start/stop/count grid, linear or logarithmic."""

    start: float
    stop: float
    count: int
    scale: str = "linear"
    unit: str = "us^-1"

    def values(self):
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class Scenario:
    """A parsed, validated scenario ready to run."""

    name: str
    task: str
    kind: str
    system: SpinSystem
    grid: GridSpec | None
    out: str
    kT_ratio: float | None = None
    deuterium_scale: float = DEUTERIUM_COUPLING_SCALE
    deuterium_spin: float = DEUTERIUM_SPIN
    source_gauss: np.ndarray | None = field(default=None, compare=False)

    def grid_values(self):
        return self.grid.values() if self.grid is not None else None


class _Entry:
    __slots__ = ("value", "line", "column", "used")

    def __init__(self, value, line, column):
        self.value = value
        self.line = line
        self.column = column
        self.used = False


def _tokenize(document):
    """Split a document into {section: {key: _Entry}} with positions."""
    sections = {}
    current = None
    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        column = raw.index(stripped[0]) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ScenarioError("unterminated section header", lineno,
                                    column)
            name = stripped[1:-1].strip()
            if name not in _SECTIONS:
                raise ScenarioError(
                    f"unknown section [{name}]; expected one of "
                    f"{', '.join(_SECTIONS)}", lineno, column)
            if name in sections:
                raise ScenarioError(f"duplicate section [{name}]", lineno,
                                    column)
            current = sections.setdefault(name, {})
            continue
        if "=" not in stripped:
            raise ScenarioError("expected 'key = value'", lineno, column)
        if current is None:
            raise ScenarioError("key outside of any [section]", lineno,
                                column)
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ScenarioError("empty key", lineno, column)
        if not value:
            raise ScenarioError(f"empty value for {key!r}", lineno, column)
        if key in current:
            raise ScenarioError(f"duplicate key {key!r}", lineno, column)
        current[key] = _Entry(value, lineno, raw.index("=") + 2)
    return sections


class _Section:
    """Typed accessors over one section's entries."""

    def __init__(self, name, entries):
        self.name = name
        self.entries = entries

    def _entry(self, key):
        entry = self.entries.get(key)
        if entry is not None:
            entry.used = True
        return entry

    def has(self, key):
        return key in self.entries

    def string(self, key, default=None, choices=None):
        entry = self._entry(key)
        if entry is None:
            if default is None:
                raise ScenarioError(f"[{self.name}] is missing {key!r}")
            return default
        if choices and entry.value not in choices:
            raise ScenarioError(
                f"{key!r} must be one of {', '.join(choices)}, got "
                f"{entry.value!r}", entry.line, entry.column)
        return entry.value

    def number(self, key, default=None):
        entry = self._entry(key)
        if entry is None:
            if default is None:
                raise ScenarioError(f"[{self.name}] is missing {key!r}")
            return default
        try:
            return float(entry.value)
        except ValueError:
            raise ScenarioError(f"{key!r} is not a number: {entry.value!r}",
                                entry.line, entry.column) from None

    def integer(self, key, default=None):
        entry = self._entry(key)
        if entry is None:
            if default is None:
                raise ScenarioError(f"[{self.name}] is missing {key!r}")
            return default
        try:
            return int(entry.value)
        except ValueError:
            raise ScenarioError(f"{key!r} is not an integer: {entry.value!r}",
                                entry.line, entry.column) from None

    def forbid(self, key, why):
        entry = self.entries.get(key)
        if entry is not None:
            raise ScenarioError(f"{key!r} not allowed: {why}", entry.line,
                                entry.column)

    def unused(self):
        return [(k, e) for k, e in self.entries.items() if not e.used]


def _parse_grid(section, task):
    start = section.number("start")
    stop = section.number("stop")
    count = section.integer("count")
    scale = section.string("scale", default="linear",
                           choices=("linear", "log"))
    default_unit = "us" if task == "evolve" else "us^-1"
    unit_choices = ("us",) if task == "evolve" else (
        ("us^-1", "gauss") if task in FIELD_GRID_TASKS else ("us^-1",))
    unit = section.string("unit", default=default_unit, choices=unit_choices)
    if count < 1:
        raise ScenarioError("grid count must be >= 1")
    if count > 1 and not start < stop:
        raise ScenarioError("grid start must be < stop")
    if count == 1 and start != stop:
        raise ScenarioError("single-point grid requires start == stop")
    if scale == "log" and start <= 0:
        raise ScenarioError("log grid requires start > 0")
    return GridSpec(start=start, stop=stop, count=count, scale=scale,
                    unit=unit)


def _parse_system(section, task):
    needs_omega = task in ("spectrum", "branch-scan", "evolve")
    if not needs_omega:
        section.forbid("omega", f"the grid sets the field for a {task}")
        section.forbid("B_gauss", f"the grid sets the field for a {task}")
        omega = 1.0  # placeholder, replaced per grid point
    else:
        if section.has("omega") and section.has("B_gauss"):
            raise ScenarioError("omega and B_gauss are mutually exclusive")
        if section.has("B_gauss"):
            omega = larmor_frequency(section.number("B_gauss"))
        else:
            omega = section.number("omega")

    if section.has("kT") and section.has("kT_ratio"):
        raise ScenarioError("kT and kT_ratio are mutually exclusive")

    if task == "branch-scan":
        section.forbid("kS", "the grid sets kS for a branch-scan")
        section.forbid("kT", "use kT_ratio for a branch-scan")
        ks = 0.0
    else:
        ks = section.number("kS")

    ratio = None
    if section.has("kT"):
        kt = section.number("kT")
    else:
        ratio = section.number("kT_ratio", default=0.2)
        kt = ratio * ks

    default_spin = 0.5 if task == "deuteration" else None
    i1 = section.number("I1", default=default_spin)
    i2 = section.number("I2", default=default_spin)
    try:
        system = SpinSystem(I1=i1, I2=i2, a1=section.number("a1"),
                            a2=section.number("a2"), omega=omega,
                            kS=ks, kT=kt)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from exc
    return system, ratio


def parse_scenario(document: str) -> Scenario:
    """Parse and validate one scenario document."""
    sections = _tokenize(document)
    if "scenario" not in sections:
        raise ScenarioError("missing [scenario] section")
    if "system" not in sections:
        raise ScenarioError("missing [system] section")

    meta = _Section("scenario", sections["scenario"])
    name = meta.string("name")
    task = meta.string("task", choices=TASKS)
    kind = meta.string("kind", default=QUANTUM, choices=KINDS)
    out = meta.string("out", default=name)

    system, kt_ratio = _parse_system(_Section("system", sections["system"]),
                                     task)

    grid = None
    if task in GRID_TASKS:
        if "grid" not in sections:
            raise ScenarioError(f"task {task!r} requires a [grid] section")
        grid = _parse_grid(_Section("grid", sections["grid"]), task)
    elif "grid" in sections:
        entry = next(iter(sections["grid"].values()))
        raise ScenarioError(f"task {task!r} takes no [grid] section",
                            entry.line, entry.column)

    d_scale = DEUTERIUM_COUPLING_SCALE
    d_spin = DEUTERIUM_SPIN
    if "pairs" in sections:
        if task != "deuteration":
            entry = next(iter(sections["pairs"].values()))
            raise ScenarioError("[pairs] only applies to deuteration",
                                entry.line, entry.column)
        pairs = _Section("pairs", sections["pairs"])
        d_scale = pairs.number("deuterium_scale",
                               default=DEUTERIUM_COUPLING_SCALE)
        d_spin = pairs.number("deuterium_spin", default=DEUTERIUM_SPIN)
        if d_scale <= 0:
            raise ScenarioError("deuterium_scale must be > 0")

    if task == "deuteration" and (system.I1 != 0.5 or system.I2 != 0.5):
        raise ScenarioError("deuteration requires I1 = I2 = 0.5 (protonated "
                            "base)")
    if task == "evolve" and grid.start < 0:
        raise ScenarioError("time grid must start at t >= 0")

    for section_name, entries in sections.items():
        for key, entry in _Section(section_name, entries).unused():
            raise ScenarioError(f"unknown key {key!r} in [{section_name}]",
                                entry.line, entry.column)

    source_gauss = None
    if grid is not None and grid.unit == "gauss":
        source_gauss = grid.values()
        grid = GridSpec(start=larmor_frequency(grid.start),
                        stop=larmor_frequency(grid.stop),
                        count=grid.count, scale=grid.scale, unit="us^-1")

    return Scenario(name=name, task=task, kind=kind, system=system,
                    grid=grid, out=out, kT_ratio=kt_ratio,
                    deuterium_scale=d_scale, deuterium_spin=d_spin,
                    source_gauss=source_gauss)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as handle:
        return parse_scenario(handle.read())


def bundled_scenario_text(name: str) -> str:
    """Text of one of the shipped scenarios (fig2, fig4, fig5, fig6, sec5a)."""
    from importlib import resources

    resource = resources.files("zenospin") / "scenarios" / f"{name}.cfg"
    if not resource.is_file():
        raise ScenarioError(f"no bundled scenario named {name!r}")
    return resource.read_text(encoding="utf-8")
