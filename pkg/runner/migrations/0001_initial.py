# Generated by Django 5.2.8 on 2026-10-19 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="RunLog",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("command", models.CharField(db_index=True, max_length=30)),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("STARTED", "Started"),
                            ("SUCCESS", "Success"),
                            ("FAILED", "Failed"),
                            ("QUEUED", "Queued"),
                        ],
                        db_index=True,
                        max_length=10,
                    ),
                ),
                ("dataset", models.CharField(blank=True, max_length=100, null=True)),
                (
                    "config_hash",
                    models.CharField(
                        blank=True,
                        help_text="sha256 of the resolved config",
                        max_length=64,
                        null=True,
                    ),
                ),
                ("seed", models.BigIntegerField(blank=True, null=True)),
                ("output_dir", models.CharField(blank=True, max_length=500, null=True)),
                ("description", models.TextField(blank=True, default="")),
                ("created_at", models.DateTimeField(auto_now_add=True, db_index=True)),
            ],
            options={
                "verbose_name": "Run Log",
                "verbose_name_plural": "Run Logs",
                "db_table": "run_logs",
                "ordering": ["-created_at"],
                "indexes": [
                    models.Index(fields=["command", "created_at"], name="idx_run_command_time"),
                ],
            },
        ),
    ]
