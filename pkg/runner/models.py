from django.db import models


class RunLog(models.Model):
    """
    Audit trail of command runs. Results themselves are files; this table
    only records who ran what with which configuration.
    """
    STATUS_CHOICES = [
        ("STARTED", "Started"),
        ("SUCCESS", "Success"),
        ("FAILED", "Failed"),
        ("QUEUED", "Queued"),
    ]

    command = models.CharField(max_length=30, db_index=True)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES, db_index=True)
    dataset = models.CharField(max_length=100, null=True, blank=True)
    config_hash = models.CharField(max_length=64, null=True, blank=True, help_text="sha256 of the resolved config")
    seed = models.BigIntegerField(null=True, blank=True)
    output_dir = models.CharField(max_length=500, null=True, blank=True)
    description = models.TextField(blank=True, default="")
    created_at = models.DateTimeField(auto_now_add=True, db_index=True)

    class Meta:
        db_table = "run_logs"
        verbose_name = "Run Log"
        verbose_name_plural = "Run Logs"
        ordering = ["-created_at"]
        indexes = [
            models.Index(fields=["command", "created_at"], name="idx_run_command_time"),
        ]

    def __str__(self):
        return f"{self.command} {self.status} at {self.created_at}"
