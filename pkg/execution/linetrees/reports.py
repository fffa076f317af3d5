"""linetrees.reports
-----------------

Versioned JSON verification reports.

A record compares one formula value against one oracle value; a report
passes exactly when every record agrees. Counts are arbitrary-precision
integers and are written to JSON as integers.
"""

from pydantic import BaseModel, ConfigDict, Field, computed_field

REPORT_SCHEMA_VERSION = 1


class InstanceDescriptor(BaseModel):
    """Where a verified graph came from."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    generator: str
    seed: int | None = None
    n: int
    m: int
    graph_class: str = Field(alias="class")


class CheckRecord(BaseModel):
    """One formula-versus-oracle comparison."""

    model_config = ConfigDict(frozen=True)

    check: str
    formula: int
    oracle: int
    elapsed: float = 0.0
    detail: str | None = None

    @computed_field
    @property
    def agree(self) -> bool:
        return self.formula == self.oracle


class VerificationReport(BaseModel):
    """All checks run against one instance."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schema")
    instance: InstanceDescriptor
    records: list[CheckRecord] = Field(default_factory=list)
    counterexamples: list[str] = Field(default_factory=list)

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return all(record.agree for record in self.records)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class FuzzReport(BaseModel):
    """A seeded batch of verification reports, in instance order."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schema")
    graph_class: str = Field(alias="class")
    seed: int
    count: int
    reports: list[VerificationReport] = Field(default_factory=list)

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @computed_field
    @property
    def failures(self) -> int:
        return sum(1 for report in self.reports if not report.passed)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
