# Generated by Django 5.1 on 2026-10-19 09:00

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True, help_text='Timestamp when the record was created')),
                ('updated_at', models.DateTimeField(auto_now=True, help_text='Timestamp when the record was last updated')),
                ('suite', models.CharField(help_text='Suite names joined by commas', max_length=100, verbose_name='suite')),
                ('fingerprint', models.CharField(db_index=True, help_text='SHA-256 of the canonical system document', max_length=64, verbose_name='fingerprint')),
                ('system_label', models.CharField(blank=True, help_text='Generator name or file the system came from', max_length=255, verbose_name='system label')),
                ('verdict', models.CharField(choices=[('PASS', 'Pass'), ('FAIL', 'Fail')], max_length=10, verbose_name='verdict')),
                ('passed', models.PositiveIntegerField(default=0, verbose_name='passed checks')),
                ('failed_count', models.PositiveIntegerField(default=0, verbose_name='failed checks')),
                ('skipped', models.PositiveIntegerField(default=0, verbose_name='skipped checks')),
                ('payload', models.JSONField(help_text='Schema-stable JSON report', verbose_name='payload')),
            ],
            options={
                'verbose_name': 'Verification run',
                'verbose_name_plural': 'Verification runs',
                'ordering': ['-created_at'],
                'abstract': False,
            },
        ),
    ]
