"""
Écriture des rapports CSV et JSON.

Les deux formats portent le même contenu numérique : les flottants sont
écrits avec ``repr`` (aller-retour exact), séparateur décimal ``.``, sans
dépendance à la locale.
"""

import csv
import io
from typing import Any, Iterable, Mapping, Sequence, Type

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

JSON_INDENT = 2


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_rows(
    rows: Iterable[Any], serializer_class: Type[serializers.Serializer]
) -> list:
    return list(serializer_class(list(rows), many=True).data)


def render_json(data: Any) -> str:
    """JSON indenté, ordre des clés celui des serializers."""
    content = JSONRenderer().render(data, renderer_context={"indent": JSON_INDENT})
    return content.decode("utf-8") + "\n"


def render_csv(records: Sequence[Mapping[str, Any]], columns: Sequence[str]) -> str:
    """CSV à colonnes fixes ; les valeurs absentes sont des cellules vides."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_cell(record.get(column)) for column in columns])
    return buffer.getvalue()


def render_rows(
    rows: Iterable[Any],
    serializer_class: Type[serializers.Serializer],
    output: str,
) -> str:
    """
    Sérialise des lignes de rapport dans le format demandé.

    Args:
        rows: Lignes (dataclasses du harnais)
        serializer_class: Serializer décrivant les colonnes
        output: ``csv`` ou ``json``
    """
    records = serialize_rows(rows, serializer_class)
    if output == "csv":
        columns = list(serializer_class().fields.keys())
        return render_csv(records, columns)
    return render_json(records)
