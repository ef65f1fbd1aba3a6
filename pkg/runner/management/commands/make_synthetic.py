"""
Django management command writing a constructed dataset and its schema.

Usage:
    python manage.py make_synthetic duplicated --k 6 --out data/synthetic
    python manage.py make_synthetic consistent --m 20 --seed 3
"""
from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from datasets.services.synthetic_services import KINDS, make_synthetic, write_dataset

# Flags forwarded to the builder when given, by kind.
BUILDER_OPTIONS = {
    "consistent": ("n", "p", "m", "seed"),
    "collinear": ("n", "p", "copies", "signal", "noise", "seed"),
    "duplicated": ("k", "p", "repeats", "noise", "seed"),
    "wide": ("n", "p", "noise", "seed"),
}


class Command(BaseCommand):
    help = "Write a synthetic dataset (CSV + schema) with a known singular-value structure"

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=KINDS)
        parser.add_argument("--out", help="Output directory (default: PINVNET DATA_DIR)")
        parser.add_argument("--stem", help="File name stem (default: the kind)")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--n", type=int, help="Rows")
        parser.add_argument("--p", type=int, help="Input features")
        parser.add_argument("--m", type=int, help="Hidden size the consistent targets are built with")
        parser.add_argument("--k", type=int, help="Distinct points of the duplicated dataset")
        parser.add_argument("--repeats", type=int)
        parser.add_argument("--copies", type=int, help="Near-identical copies of each collinear feature")
        parser.add_argument("--signal", type=float, help="Amplitude of the collinear sine target")
        parser.add_argument("--noise", type=float)

    def handle(self, *args, **options):
        kind = options["kind"]
        builder_options = {
            key: options[key] for key in BUILDER_OPTIONS[kind] if options.get(key) is not None
        }
        try:
            d = make_synthetic(kind, **builder_options)
            data_path, schema_path = write_dataset(
                d, options["out"] or settings.PINVNET["DATA_DIR"], stem=options["stem"]
            )
        except ValidationError as exc:
            raise CommandError(exc.message, returncode=2)
        self.stdout.write(self.style.SUCCESS(f"✓ Wrote {d.size} rows to {data_path}"))
        self.stdout.write(self.style.SUCCESS(f"✓ Wrote schema {schema_path}"))
