from django.db import models, transaction


# History index of suite runs; the JSON report file stays the primary record
class VerificationRun(models.Model):
    seed = models.IntegerField()
    suites = models.CharField(max_length=200, help_text="Comma-separated suites in run order")
    grid = models.IntegerField()
    bandwidth = models.IntegerField()
    s = models.FloatField()

    total_checks = models.IntegerField(default=0)
    passed_checks = models.IntegerField(default=0)
    failed_checks = models.IntegerField(default=0)
    passed = models.BooleanField(default=False)

    report_path = models.CharField(max_length=500)
    report_sha256 = models.CharField(max_length=64)

    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['seed'], name='run_seed_idx'),
            models.Index(fields=['report_sha256'], name='run_sha256_idx'),
        ]

    def __str__(self):
        status = 'pass' if self.passed else f'{self.failed_checks} failed'
        return f"run seed={self.seed} [{self.suites}] - {status}"

    @classmethod
    def record(cls, report, report_path, digest):
        """Store a finished report and one CheckRecord per check."""
        environment = report.config.environment()
        summary = report.summary()
        with transaction.atomic():
            run = cls.objects.create(
                seed=environment['seed'],
                suites=','.join(environment['suites']),
                grid=environment['grid'],
                bandwidth=environment['bandwidth'],
                s=environment['s'],
                total_checks=summary['total'],
                passed_checks=summary['passed'],
                failed_checks=summary['failed'],
                passed=summary['pass'],
                report_path=str(report_path),
                report_sha256=digest,
            )
            CheckRecord.objects.bulk_create([
                CheckRecord(
                    run=run,
                    position=position,
                    suite=title,
                    name=check.name,
                    anchor=check.anchor,
                    lhs=check.lhs,
                    rhs=check.rhs,
                    margin=check.margin,
                    tolerance=check.tolerance,
                    gated=check.gated,
                    passed=check.passed,
                )
                for position, (title, check) in enumerate(report.checks())
            ])
        return run

    def failures(self):
        return self.checks.filter(gated=True, passed=False)


class CheckRecord(models.Model):
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='checks')
    position = models.IntegerField()
    suite = models.CharField(max_length=200)
    name = models.CharField(max_length=200)
    anchor = models.CharField(max_length=200)

    lhs = models.FloatField()
    rhs = models.FloatField()
    margin = models.FloatField()
    tolerance = models.FloatField()
    gated = models.BooleanField(default=True)
    passed = models.BooleanField()

    class Meta:
        ordering = ['run', 'position']
        indexes = [
            models.Index(fields=['run', 'passed'], name='check_run_passed_idx'),
            models.Index(fields=['anchor'], name='check_anchor_idx'),
        ]

    def __str__(self):
        return f"{self.suite}: {self.name} ({'pass' if self.passed else 'fail'})"
