import { Component, OnDestroy, OnInit } from '@angular/core';
import { Api } from './api';

@Component({ selector: 'app-status', template: '{{ status }}' })
export class StatusComponent implements OnInit, OnDestroy {
  status = 'unknown';

  constructor(private api: Api) {}

  ngOnInit() {
    setInterval(() => this.refresh(), 10000);
  }

  ngOnDestroy() {
    this.status = 'gone';
  }

  private refresh() {
    this.api.status().then(s => (this.status = s));
  }
}
