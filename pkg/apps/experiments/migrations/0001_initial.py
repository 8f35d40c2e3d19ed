# Generated by Django 5.0 on 2026-10-19 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('config_hash', models.CharField(max_length=12)),
                ('seed', models.BigIntegerField()),
                ('family', models.CharField(max_length=10)),
                ('max_arity', models.IntegerField()),
                ('depth_policy', models.CharField(max_length=10)),
                ('aggregator', models.CharField(max_length=10)),
                ('task', models.CharField(max_length=30)),
                ('train_n', models.IntegerField()),
                ('config', models.JSONField()),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('completed', 'Completed'), ('failed', 'Failed')], default='pending', max_length=20)),
                ('train_curve', models.JSONField(default=list)),
                ('val_curve', models.JSONField(default=list)),
                ('best_epoch', models.IntegerField(blank=True, null=True)),
                ('deviations', models.JSONField(default=list)),
                ('wallclock_s', models.FloatField(default=0.0)),
                ('model_path', models.CharField(blank=True, max_length=500)),
                ('error_message', models.TextField(blank=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('completed_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['config_hash', 'seed'],
                'indexes': [models.Index(fields=['status'], name='run_status_idx'), models.Index(fields=['task'], name='run_task_idx')],
                'unique_together': {('config_hash', 'seed')},
            },
        ),
        migrations.CreateModel(
            name='EvalRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('eval_n', models.IntegerField()),
                ('accuracy', models.FloatField()),
                ('wallclock_s', models.FloatField(default=0.0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='evaluations', to='experiments.experimentrun')),
            ],
            options={
                'ordering': ['run', 'eval_n'],
                'unique_together': {('run', 'eval_n')},
            },
        ),
        migrations.CreateModel(
            name='RunLog',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('log_type', models.CharField(choices=[('info', 'Info'), ('success', 'Success'), ('error', 'Error'), ('warning', 'Warning')], default='info', max_length=10)),
                ('message', models.TextField()),
                ('timestamp', models.DateTimeField(auto_now_add=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='logs', to='experiments.experimentrun')),
            ],
            options={
                'ordering': ['timestamp', 'id'],
                'indexes': [models.Index(fields=['run', 'timestamp'], name='runlog_run_time_idx')],
            },
        ),
    ]
