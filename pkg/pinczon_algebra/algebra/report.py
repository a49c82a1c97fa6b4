from fractions import Fraction

from jinja2 import Environment
from pydantic import BaseModel, ConfigDict, Field

__all__ = (
    "CheckResult",
    "ValidationReport",
)

_TEMPLATE = Environment(trim_blocks=True, lstrip_blocks=True).from_string(
    """\
[bold]{{ title }}[/bold]
{% for check in checks %}
  {% if check.passed %}[green]PASS[/green]{% else %}[red]FAIL[/red]{% endif %} {{ check.name }}
  {%- if check.detail %}: {{ check.detail }}{% endif %}
  {%- if check.witness is not none %} at {{ check.display_witness }}{% endif %}
  {%- if check.value is not none %} (value {{ check.value }}){% endif %}

{% endfor %}
{{ passed_count }}/{{ checks | length }} checks passed
"""
)


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    passed: bool
    detail: str = ""
    witness: tuple[int, ...] | None = Field(default=None, description="Offending basis indices, 0-based")
    value: Fraction | None = Field(default=None, description="Nonzero value observed at the witness")

    @property
    def display_witness(self) -> str:
        if self.witness is None:
            return ""
        return "(" + ", ".join(str(i + 1) for i in self.witness) + ")"


class ValidationReport(BaseModel):
    """Ordered list of named checks"""

    title: str = ""
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, passed: bool, detail: str = "", witness: tuple[int, ...] | None = None, value: Fraction | None = None) -> CheckResult:
        check = CheckResult(name=name, passed=passed, detail=detail, witness=witness, value=value)
        self.checks.append(check)
        return check

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.checks.extend(other.checks)
        return self

    def __getitem__(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def render(self) -> str:
        """Text with rich console markup"""
        return _TEMPLATE.render(
            title=self.title,
            checks=self.checks,
            passed_count=len(self.checks) - len(self.failures),
        )
