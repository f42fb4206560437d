# Generated by Django 5.2.3

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('seed', models.IntegerField()),
                ('suites', models.CharField(help_text='Comma-separated suites in run order', max_length=200)),
                ('grid', models.IntegerField()),
                ('bandwidth', models.IntegerField()),
                ('s', models.FloatField()),
                ('total_checks', models.IntegerField(default=0)),
                ('passed_checks', models.IntegerField(default=0)),
                ('failed_checks', models.IntegerField(default=0)),
                ('passed', models.BooleanField(default=False)),
                ('report_path', models.CharField(max_length=500)),
                ('report_sha256', models.CharField(max_length=64)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [
                    models.Index(fields=['seed'], name='run_seed_idx'),
                    models.Index(fields=['report_sha256'], name='run_sha256_idx'),
                ],
            },
        ),
        migrations.CreateModel(
            name='CheckRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('position', models.IntegerField()),
                ('suite', models.CharField(max_length=200)),
                ('name', models.CharField(max_length=200)),
                ('anchor', models.CharField(max_length=200)),
                ('lhs', models.FloatField()),
                ('rhs', models.FloatField()),
                ('margin', models.FloatField()),
                ('tolerance', models.FloatField()),
                ('gated', models.BooleanField(default=True)),
                ('passed', models.BooleanField()),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='checks', to='core.verificationrun')),
            ],
            options={
                'ordering': ['run', 'position'],
                'indexes': [
                    models.Index(fields=['run', 'passed'], name='check_run_passed_idx'),
                    models.Index(fields=['anchor'], name='check_anchor_idx'),
                ],
            },
        ),
    ]
