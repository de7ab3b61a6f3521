import json
import time
from typing import Literal, Optional, Union

from pydantic import BaseModel, Extra, StrictInt, StrictStr, ValidationError, conint

from constants.instance import format_version, rational_field_name
from mbmod.errors import InstanceParseError
from mbmod.scalar import FieldSpec, format_raw
from mbmod.table import ActionTable, build_table
from utils.logger import log


class EntryRecord(BaseModel):
    i: StrictInt
    j: StrictInt
    k: StrictInt
    c: StrictStr

    class Config:
        extra = Extra.forbid

class PrimeFieldRecord(BaseModel):
    gf: conint(strict=True, ge=2)  # type: ignore[valid-type]

    class Config:
        extra = Extra.forbid

class InstanceFile(BaseModel):
    format_version: StrictInt
    field: Union[Literal["rational"], PrimeFieldRecord]
    v_size: conint(strict=True, ge=0)  # type: ignore[valid-type]
    w_size: conint(strict=True, ge=0)  # type: ignore[valid-type]
    v_labels: Optional[list[StrictStr]] = None
    w_labels: Optional[list[StrictStr]] = None
    entries: list[EntryRecord]

    class Config:
        extra = Extra.forbid


def _field_of(document: InstanceFile) -> FieldSpec:
    if isinstance(document.field, PrimeFieldRecord):
        return FieldSpec.prime(document.field.gf)
    return FieldSpec.rationals()


def parse_instance(text: str) -> ActionTable:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(f"line {e.lineno} column {e.colno}", e.msg)

    try:
        document = InstanceFile.parse_obj(raw)
    except ValidationError as e:
        first = e.errors()[0]
        raise InstanceParseError(".".join(str(part) for part in first["loc"]), first["msg"])

    if document.format_version != format_version:
        raise InstanceParseError("format_version", f"unsupported version {document.format_version}")

    return build_table(((e.i, e.j, e.k, e.c) for e in document.entries), document.v_size, document.w_size,
                       _field_of(document), document.v_labels, document.w_labels)


def load_instance(path: str) -> ActionTable:
    now = time.time()
    with open(path, "rb") as instance_file:
        raw = instance_file.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise InstanceParseError(f"byte {e.start}", e.reason)
    t = parse_instance(text)
    log(f"Loaded {path}: {t.v_size}x{t.w_size}, {t.entry_count} entries in {time.time() - now} seconds")
    return t


def serialize_instance(t: ActionTable) -> str:
    """Canonical JSON: sorted keys, one entry per line, entries sorted by (i, j)."""
    header: dict[str, object] = {
        "field": rational_field_name if t.field.modulus is None else {"gf": t.field.modulus},
        "format_version": format_version,
        "v_size": t.v_size,
        "w_size": t.w_size,
    }
    if t.v_labels is not None:
        header["v_labels"] = list(t.v_labels)
    if t.w_labels is not None:
        header["w_labels"] = list(t.w_labels)

    lines = [json.dumps({"c": format_raw(c), "i": i, "j": j, "k": k}, sort_keys=True)
             for i, j, k, c in zip(t.sources.tolist(), t.columns.tolist(), t.targets.tolist(), t.coefficients)]
    rest = json.dumps(header, sort_keys=True)[1:]
    return "{\"entries\": [\n" + ",\n".join(lines) + ("\n" if lines else "") + "], " + rest + "\n"


def save_instance(t: ActionTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as instance_file:
        instance_file.write(serialize_instance(t))
