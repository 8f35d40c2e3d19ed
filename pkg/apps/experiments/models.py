"""
Experiment models module.

This module defines the records kept for every training run: the run
itself, one evaluation record per evaluated graph size, and run-scoped
log entries.
"""
from django.db import models


class LogType(models.TextChoices):
    INFO = 'info', 'Info'
    SUCCESS = 'success', 'Success'
    ERROR = 'error', 'Error'
    WARNING = 'warning', 'Warning'


class ExperimentRun(models.Model):
    """
    One (configuration, seed) training run.

    Runs are keyed by the training configuration hash and the seed, so a
    repeated request finds the existing record instead of adding one.

    Attributes:
        config_hash (str): Hash of the training configuration (seeds excluded).
        seed (int): Training seed.
        family (str): nlm or hognn.
        max_arity (int): B.
        depth_policy (str): fixed or recurrent.
        aggregator (str): sum, max or fpmean.
        task (str): Task id.
        train_n (int): Node count of the training graphs.
        config (dict): The full training configuration.
        status (str): pending, running, completed or failed.
        train_curve (list): Mean training loss per epoch.
        val_curve (list): Validation accuracy per epoch, initial model first.
        best_epoch (int): Epoch of the returned checkpoint (0 = initial).
        deviations (list): Departures from the reference protocol.
        wallclock_s (float): Training time in seconds.
        model_path (str): Where the trained model file was written.
        error_message (str): Failure reason, if any.
    """

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('completed', 'Completed'),
        ('failed', 'Failed'),
    ]

    config_hash = models.CharField(max_length=12)
    seed = models.BigIntegerField()

    # Model and task summary
    family = models.CharField(max_length=10)
    max_arity = models.IntegerField()
    depth_policy = models.CharField(max_length=10)
    aggregator = models.CharField(max_length=10)
    task = models.CharField(max_length=30)
    train_n = models.IntegerField()
    config = models.JSONField()

    status = models.CharField(
        max_length=20,
        choices=STATUS_CHOICES,
        default='pending'
    )

    # Results
    train_curve = models.JSONField(default=list)
    val_curve = models.JSONField(default=list)
    best_epoch = models.IntegerField(null=True, blank=True)
    deviations = models.JSONField(default=list)
    wallclock_s = models.FloatField(default=0.0)
    model_path = models.CharField(max_length=500, blank=True)

    error_message = models.TextField(blank=True)

    # Timestamps
    created_at = models.DateTimeField(auto_now_add=True)
    started_at = models.DateTimeField(null=True, blank=True)
    completed_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['config_hash', 'seed']
        unique_together = ['config_hash', 'seed']
        indexes = [
            models.Index(fields=['status'], name='run_status_idx'),
            models.Index(fields=['task'], name='run_task_idx'),
        ]

    def __str__(self):
        """Return string representation of the run."""
        return f"Run {self.config_hash}/{self.seed} ({self.family}-{self.max_arity} {self.task}) - {self.status}"


class EvalRecord(models.Model):
    """
    Accuracy of a run's model on graphs of one size.

    One record is one row of the metrics CSV.
    """
    run = models.ForeignKey(
        ExperimentRun,
        on_delete=models.CASCADE,
        related_name='evaluations'
    )
    eval_n = models.IntegerField()
    accuracy = models.FloatField()
    wallclock_s = models.FloatField(default=0.0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['run', 'eval_n']
        unique_together = ['run', 'eval_n']

    def to_row(self):
        """
        Serialize as a metrics CSV row.

        Returns:
            dict: Column name -> value, in the metrics column order.
        """
        run = self.run
        return {
            'config_hash': run.config_hash,
            'family': run.family,
            'B': run.max_arity,
            'D_policy': run.depth_policy,
            'agg': run.aggregator,
            'task': run.task,
            'train_n': run.train_n,
            'eval_n': self.eval_n,
            'seed': run.seed,
            'accuracy': self.accuracy,
            'wallclock_s': self.wallclock_s,
        }

    def __str__(self):
        return f"{self.run.config_hash}/{self.run.seed} n={self.eval_n}: {self.accuracy:.1f}"


class RunLog(models.Model):
    """
    A log entry attached to a run.

    Attributes:
        run (ExperimentRun): The run this entry belongs to.
        log_type (str): info, success, warning or error.
        message (str): What happened.
        timestamp (datetime): When the entry was created.
    """
    run = models.ForeignKey(
        ExperimentRun,
        on_delete=models.CASCADE,
        related_name='logs'
    )
    log_type = models.CharField(
        max_length=10,
        choices=LogType.choices,
        default=LogType.INFO
    )
    message = models.TextField()
    timestamp = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['timestamp', 'id']
        indexes = [
            models.Index(fields=['run', 'timestamp'], name='runlog_run_time_idx'),
        ]

    def __str__(self):
        return f"Run {self.run.config_hash} - {self.log_type.upper()} - {self.message[:50]}"
